"""Type generating series of connected quadrangulations and cross-trees.

Series are in ``x`` marking squares, stored from the constant term on.
Four systems: quadrangulations up to rotation or cross-trees (twist classes),
each with or without the cross (a square with four neighbours).
"""

from __future__ import annotations

from dataclasses import dataclass

from .quad import canonical_cross_tree, canonical_up_to_rotation, enumerate_all, has_cross, is_connected
from .rings import TruncatedSeries, series_fixed_point

VARIANTS = ("quadrangulation", "cross-tree", "quadrangulation-no-cross", "cross-tree-no-cross")
NAMES = ("Tb", "T", "Ti", "Tsq", "Tsqi", "TB")
DEFAULT_ORDER = 12


def e2_type(f: TruncatedSeries) -> TruncatedSeries:
    """Unordered pairs: ``(f^2 + f(x^2)) / 2``."""
    return (f * f + f.dilate(2)) / 2


def c4_type(f: TruncatedSeries) -> TruncatedSeries:
    """Oriented 4-cycles: ``(f^4 + f(x^2)^2 + 2 f(x^4)) / 4``."""
    f2 = f.dilate(2)
    return (f**4 + f2 * f2 + f.dilate(4) * 2) / 4


def e2_e2_type(f: TruncatedSeries) -> TruncatedSeries:
    return e2_type(e2_type(f))


def _branch_rhs(variant: str):
    def quad(b):
        return (1 + 2 * b + 3 * b * b + b**3).shift()

    def cross(b):
        e = e2_type(b)
        return (1 + b + b * b + e + b * e).shift()

    def quad_nc(b):
        return (1 + 2 * b + 3 * b * b).shift()

    def cross_nc(b):
        return (1 + b + b * b + e2_type(b)).shift()

    return {"quadrangulation": quad, "cross-tree": cross, "quadrangulation-no-cross": quad_nc, "cross-tree-no-cross": cross_nc}[variant]


def _pointed_square(variant: str, b: TruncatedSeries) -> TruncatedSeries:
    if variant == "quadrangulation":
        return (1 + b + b * b + b**3 + c4_type(b)).shift()
    if variant == "quadrangulation-no-cross":
        return (1 + b + b * b + b**3).shift()
    e = e2_type(b)
    if variant == "cross-tree":
        return (1 + b + e + b * e + e2_e2_type(b)).shift()
    return (1 + b + e + b * e).shift()


def _strong_branch(variant: str, b: TruncatedSeries) -> TruncatedSeries | None:
    """Branches whose root square does not have exactly two opposite neighbours."""
    if variant == "quadrangulation":
        return (1 + 2 * b + 2 * b * b + b**3).shift()
    if variant == "cross-tree":
        return (1 + b + b * b + b * e2_type(b)).shift()
    return None


@dataclass(frozen=True)
class SpeciesSystem:
    variant: str
    order: int
    series: dict  # name -> TruncatedSeries

    def coefficients(self, name: str) -> list[int]:
        """Counts by number of squares, starting at one square."""
        return self.series[name].assert_counting()[1:]

    def residuals(self) -> dict[str, bool]:
        s = self.series
        b = s["Tb"]
        return {
            "branch": _branch_rhs(self.variant)(b) == b,
            "dissymmetry": s["Tsq"] + s["Ti"] == s["T"] + s["Tsqi"],
            "edge": s["Ti"] == e2_type(b),
            "square-edge": s["Tsqi"] == b * b,
            "square": s["Tsq"] == _pointed_square(self.variant, b),
        }


def solve_system(variant: str, order: int = DEFAULT_ORDER) -> SpeciesSystem:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    b = series_fixed_point(_branch_rhs(variant), order)
    ti = e2_type(b)
    tsqi = b * b
    tsq = _pointed_square(variant, b)
    series = {"Tb": b, "Ti": ti, "Tsqi": tsqi, "Tsq": tsq, "T": tsq + ti - tsqi}
    strong = _strong_branch(variant, b)
    if strong is not None:
        series["TB"] = strong
    for s in series.values():
        s.assert_counting()
    return SpeciesSystem(variant, order, series)


# Reference sequences, by number of squares from one square on.
PRINTED = {
    "quadrangulation": {
        "Tb": [1, 2, 7, 27, 114, 507, 2342],
        "T": [1, 1, 1, 4, 11, 42, 155, 659, 2810],
        "Ti": [0, 1, 2, 10, 41, 196, 924],
        "Tsq": [1, 1, 3, 12, 52, 231, 1079],
        "Tsqi": [0, 1, 4, 18, 82, 385, 1848],
        "TB": [1, 2, 6, 23, 96, 425, 1957, 9277],
    },
    "cross-tree": {
        "Tb": [1, 1, 3, 7, 20, 58, 178, 557],
        "T": [1, 1, 1, 2, 4, 9, 21, 56, 153],
        "Ti": [0, 1, 1, 4, 10, 33, 99, 324],
        "Tsq": [1, 1, 2, 5, 14, 39, 120],
        "Tsqi": [0, 1, 2, 7, 20, 63, 198],
        "TB": [1, 1, 2, 6, 16, 48, 145, 458],
    },
    "quadrangulation-no-cross": {
        "Tb": [1, 2, 7, 26, 106, 452, 1999],
        "T": [1, 1, 1, 4, 10, 40, 141],
        "Ti": [0, 1, 2, 10, 40, 186, 846],
        "Tsq": [1, 1, 3, 12, 50, 219, 987],
        "Tsqi": [0, 1, 4, 18, 80, 365, 1692],
    },
    "cross-tree-no-cross": {
        "Tb": [1, 1, 3, 6, 17, 44, 128, 365, 1091],
        "T": [1, 1, 1, 2, 3, 8, 16, 42, 102],
        "Ti": [0, 1, 1, 4, 9, 29, 79, 244, 727],
        "Tsq": [1, 1, 2, 5, 12, 34, 95, 280, 829],
        "Tsqi": [0, 1, 2, 7, 18, 55, 158, 482, 1454],
    },
}


def compare_printed(order: int = DEFAULT_ORDER) -> list[tuple[str, str, bool]]:
    """``(variant, series, matches)`` for every reference sequence."""
    out = []
    for variant, table in PRINTED.items():
        system = solve_system(variant, order)
        for name, seq in table.items():
            out.append((variant, name, system.coefficients(name)[: len(seq)] == seq))
    return out


def direct_counts(variant: str, max_squares: int) -> list[int]:
    """Connected shapes counted by enumeration, for ``1..max_squares`` squares."""
    out = []
    for n in range(1, max_squares + 1):
        shapes = set()
        for q in enumerate_all(n):
            if not is_connected(q):
                continue
            if variant.endswith("no-cross") and has_cross(q):
                continue
            if variant.startswith("cross-tree"):
                shapes.add(canonical_cross_tree(q))
            else:
                shapes.add(canonical_up_to_rotation(q))
        out.append(len(shapes))
    return out


def to_csv(system: SpeciesSystem) -> str:
    names = [n for n in NAMES if n in system.series]
    rows = ["squares," + ",".join(names)]
    cols = {n: system.coefficients(n) for n in names}
    for k in range(system.order - 1):
        rows.append(",".join([str(k + 1)] + [str(cols[n][k]) for n in names]))
    return "\n".join(rows) + "\n"


def table(system: SpeciesSystem) -> str:
    names = [n for n in NAMES if n in system.series]
    cols = {n: system.coefficients(n) for n in names}
    width = max(len(str(c)) for n in names for c in cols[n]) + 1
    width = max(width, 6)
    lines = [f"{'n':>4}" + "".join(f"{n:>{width}}" for n in names)]
    for k in range(system.order - 1):
        lines.append(f"{k + 1:>4}" + "".join(f"{cols[n][k]:>{width}}" for n in names))
    return "\n".join(lines) + "\n"
