"""Published genus-2 and genus-3 reference values and their regeneration.

The rational columns are the dyadic roundings of the Daubechies parameter
``phi`` (2, 6, 9 bits for genus 2; 3, 6, 9 bits for genus 3) pushed back
through the exact pipeline.
"""

from dataclasses import dataclass
from fractions import Fraction as F

from .bank import WaveletBank2, moments
from .daubechies import generate
from .params import PhiParam
from .rationalize import ApproxStrategy, approximate_phi, bank_parameter, rebuild
from .scalars import RATIONAL, decimal_string, format_scalar


@dataclass(frozen=True)
class GoldenColumn:
    bits: int
    h0: tuple
    phi_q: tuple
    printed_moments: tuple  # strings, as printed (M1, then M2 for genus 3)

    @property
    def bank(self):
        return WaveletBank2.from_h0(self.h0, RATIONAL)

    @property
    def phi(self):
        return PhiParam(len(self.phi_q), self.phi_q, RATIONAL)


@dataclass(frozen=True)
class GoldenTable:
    genus: int
    daubechies: tuple  # printed 15-digit decimals
    columns: tuple


TABLE1 = GoldenTable(
    genus=2,
    daubechies=(0.683012701892219, 1.18301270189222, 0.316987298107781, -0.183012701892219),
    columns=(
        GoldenColumn(2, (F(12, 17), F(20, 17), F(5, 17), F(-3, 17)), (F(-1, 4),), ("0.59",)),
        GoldenColumn(
            6, (F(3008, 4385), F(5184, 4385), F(1377, 4385), F(-799, 4385)), (F(-17, 64),), ("0.008",)
        ),
        GoldenColumn(
            9,
            (F(192000, 280913), F(332288, 280913), F(88913, 280913), F(-51375, 280913)),
            (F(-137, 512),),
            ("0.001",),
        ),
    ),
)

TABLE2 = GoldenTable(
    genus=3,
    daubechies=(
        0.470467207784164,
        1.14111691583144,
        0.650365000526232,
        -0.190934415568327,
        -0.120832208310396,
        0.0498174997368838,
    ),
    columns=(
        GoldenColumn(
            3,
            (F(2888, 5249), F(5944, 5249), F(3104, 5249), F(-1056, 5249), F(-743, 5249), F(361, 5249)),
            (F(-1, 2), F(1, 8)),
            ("0.256", "1.622"),
        ),
        GoldenColumn(
            6,
            (
                F(2132672, 4439725),
                F(5059904, 4439725),
                F(572096, 887945),
                F(-170688, 887945),
                F(-553427, 4439725),
                F(233261, 4439725),
            ),
            (F(-35, 64), F(7, 64)),
            ("0.0357", "0.2169"),
        ),
        GoldenColumn(
            9,
            (
                F(2677170944, 5703228401),
                F(6509075712, 5703228401),
                F(3712561536, 5703228401),
                F(-1088205184, 5703228401),
                F(-686504079, 5703228401),
                F(282357873, 5703228401),
            ),
            (F(-283, 512), F(27, 256)),
            ("-0.0040", "-0.0239"),
        ),
    ),
)

TABLES = (TABLE1, TABLE2)


@dataclass(frozen=True)
class RegeneratedTable:
    genus: int
    daubechies: WaveletBank2
    results: tuple  # RationalizationResult per column
    matches: bool

    def rows(self):
        """Tap rows then moment rows, laid out like the published tables."""
        header = ["k", "D_N"]
        for r in self.results:
            header += [f"dyadic{r.strategy.split(':')[1]}", "approx"]
        rows = [header]
        for k in range(2 * self.genus):
            row = [str(k), decimal_string(self.daubechies.h0[k])]
            for r in self.results:
                c = r.bank.h0[k]
                row += [format_scalar(c), decimal_string(c, 5)]
            rows.append(row)
        pmax = max(self.genus - 1, 1)
        d_moments = moments(self.daubechies, pmax)
        for p in range(1, pmax + 1):
            row = [f"M{p}", decimal_string(d_moments[p], 3)]
            for r in self.results:
                m = r.moment_report[p]
                row += [format_scalar(m), decimal_string(m, 3)]
            rows.append(row)
        return rows


def regenerate(table):
    """Rebuild a table from the float Daubechies bank and the dyadic pipeline."""
    d = generate(table.genus)
    phi = bank_parameter(d)
    results = []
    for col in table.columns:
        strategy = ApproxStrategy("dyadic", bits=col.bits)
        results.append(rebuild(approximate_phi(phi, strategy), table.genus, phi, str(strategy)))
    matches = all(r.bank.h0 == col.h0 for r, col in zip(results, table.columns))
    return RegeneratedTable(table.genus, d, tuple(results), matches)
