"""Chord solvers on the interval, the circle and the pearl necklace.

Everything here is exhaustive exact arithmetic: cumulative integrals of
step functions are piecewise linear, so every solver enumerates grid
cells and solves at most 2x2 linear systems over the rationals.  All
solvers return the lexicographically smallest solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import PreconditionError, SolverInternalError
from .metric_graph import ONE, ZERO, Rational, rat

Piece = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise PreconditionError("interval with lo > hi")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo


class LineStepFunction:
    """Step function on [0, L]; the single-edge case of a graph function."""

    __slots__ = ("pieces", "length")

    def __init__(self, pieces: Sequence[tuple[Rational, Rational, Rational]], length: Rational = ONE):
        length = rat(length)
        ps = sorted((rat(lo), rat(hi), rat(v)) for lo, hi, v in pieces)
        if not ps or ps[0][0] != ZERO or ps[-1][1] != length:
            raise PreconditionError(f"pieces must partition [0, {length}]")
        for (l1, h1, _), (l2, _, _) in zip(ps, ps[1:]):
            if h1 != l2:
                raise PreconditionError("pieces must be contiguous")
        if any(lo >= hi for lo, hi, _ in ps):
            raise PreconditionError("empty piece")
        object.__setattr__(self, "pieces", tuple(ps))
        object.__setattr__(self, "length", length)

    def __setattr__(self, *a):
        raise AttributeError("LineStepFunction is immutable")

    @classmethod
    def constant(cls, value: Rational, length: Rational = ONE) -> "LineStepFunction":
        return cls([(ZERO, rat(length), rat(value))], length)

    def integral(self) -> Fraction:
        return sum(((hi - lo) * v for lo, hi, v in self.pieces), ZERO)

    def integral_between(self, a: Fraction, b: Fraction) -> Fraction:
        total = ZERO
        for lo, hi, v in self.pieces:
            x, y = max(a, lo), min(b, hi)
            if x < y:
                total += (y - x) * v
        return total

    def circle_window(self, x: Fraction, w: Fraction) -> Fraction:
        """Integral over the wrapping arc [x, x + w] on a circle of length L."""
        x = x % self.length
        if x + w <= self.length:
            return self.integral_between(x, x + w)
        return self.integral_between(x, self.length) + self.integral_between(ZERO, x + w - self.length)

    def breakpoints(self) -> list[Fraction]:
        return [lo for lo, _, _ in self.pieces] + [self.length]

    def cumulative(self, x: Fraction) -> Fraction:
        return self.integral_between(ZERO, x)

    def scale(self, c: Rational) -> "LineStepFunction":
        c = rat(c)
        return LineStepFunction([(lo, hi, c * v) for lo, hi, v in self.pieces], self.length)


# -- generic exact linear solving -------------------------------------------


def _solve_line_in_box(alpha: Fraction, beta: Fraction, c: Fraction,
                       box_x: tuple[Fraction, Fraction], box_y: tuple[Fraction, Fraction],
                       le: bool) -> Optional[tuple[Fraction, Fraction]]:
    """Lex-min (x, y) with alpha*x + beta*y == c in a box, optionally x <= y."""
    ax, bx = box_x
    ay, by = box_y

    def feasible(x: Fraction, y: Fraction) -> bool:
        return ax <= x <= bx and ay <= y <= by and (not le or x <= y)

    if alpha == 0 and beta == 0:
        if c != 0:
            return None
        x = ax
        y = max(ay, x) if le else ay
        return (x, y) if feasible(x, y) else None
    if beta == 0:
        x = c / alpha
        y = max(ay, x) if le else ay
        return (x, y) if feasible(x, y) else None
    if alpha == 0:
        y = c / beta
        x = ax
        if le and x > y:
            return None
        return (x, y) if feasible(x, y) else None
    # both nonzero: y(x) = (c - alpha*x)/beta; the feasible x-set is a closed
    # interval whose endpoints lie among these boundary candidates.
    cands = [ax, bx, (c - ay * beta) / alpha, (c - by * beta) / alpha]
    if alpha + beta != 0:
        cands.append(c / (alpha + beta))
    best = None
    for x in cands:
        y = (c - alpha * x) / beta
        if feasible(x, y) and (best is None or x < best[0]):
            best = (x, y)
    return best


def _solve_2x2_in_box(a11: Fraction, a12: Fraction, r1: Fraction,
                      a21: Fraction, a22: Fraction, r2: Fraction,
                      box_x: tuple[Fraction, Fraction], box_y: tuple[Fraction, Fraction],
                      le: bool) -> Optional[tuple[Fraction, Fraction]]:
    """Lex-min solution of a 2x2 rational system inside a box."""
    det = a11 * a22 - a12 * a21
    if det != 0:
        x = (r1 * a22 - a12 * r2) / det
        y = (a11 * r2 - r1 * a21) / det
        ax, bx = box_x
        ay, by = box_y
        if ax <= x <= bx and ay <= y <= by and (not le or x <= y):
            return (x, y)
        return None
    row1_zero = a11 == 0 and a12 == 0
    row2_zero = a21 == 0 and a22 == 0
    if row1_zero and row2_zero:
        if r1 != 0 or r2 != 0:
            return None
        return _solve_line_in_box(ZERO, ZERO, ZERO, box_x, box_y, le)
    if row1_zero:
        if r1 != 0:
            return None
        return _solve_line_in_box(a21, a22, r2, box_x, box_y, le)
    if row2_zero:
        if r2 != 0:
            return None
        return _solve_line_in_box(a11, a12, r1, box_x, box_y, le)
    lam = a21 / a11 if a11 != 0 else a22 / a12
    if a21 != lam * a11 or a22 != lam * a12 or r2 != lam * r1:
        return None
    return _solve_line_in_box(a11, a12, r1, box_x, box_y, le)


# -- interval chords ---------------------------------------------------------


def _first_root_of_window(values: Sequence[tuple[Fraction, Fraction]], target: Fraction) -> Optional[Fraction]:
    """First x with W(x) == target, W piecewise linear through (x_i, W_i)."""
    for (x0, w0), (x1, w1) in zip(values, values[1:]):
        if w0 == target:
            return x0
        if (w0 - target) * (w1 - target) < 0:
            return x0 + (x1 - x0) * (target - w0) / (w1 - w0)
    if values and values[-1][1] == target:
        return values[-1][0]
    return None


def find_fixed_window(f: LineStepFunction, k: int) -> Interval:
    """Window [x, x + 1/k] with integral exactly 1/k; smallest such x.

    The window integral is piecewise linear in x and its values at the k
    shifts 0, 1/k, ..., 1 - 1/k telescope to the whole integral, so a
    window hitting the mean exists whenever the total integral is 1.
    """
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    if f.length != ONE or f.integral() != ONE:
        raise PreconditionError("function must have integral 1 on [0, 1]")
    w = Fraction(1, k)
    grid = sorted({x for b in f.breakpoints() for x in (b, b - w) if ZERO <= x <= ONE - w} | {ZERO, ONE - w})
    values = [(x, f.integral_between(x, x + w)) for x in grid]
    x = _first_root_of_window(values, w)
    if x is None:  # pragma: no cover - IVT guarantees a root
        raise SolverInternalError("no fixed window found; this contradicts the sliding-window identity")
    return Interval(x, x + w)


def telescoping_sum(f: LineStepFunction, k: int) -> Fraction:
    """Sum of the k disjoint 1/k-window integrals; equals the whole integral."""
    w = Fraction(1, k)
    return sum((f.integral_between(i * w, (i + 1) * w) for i in range(k)), ZERO)


def find_common_chord(f: LineStepFunction, g: LineStepFunction, r: Rational) -> tuple[Interval, Fraction]:
    """Subinterval J with integral of f and g both exactly r, or both 1 - r.

    Exhausts all pairs of breakpoint cells for (lo, hi) and solves the
    exact 2x2 linear system; tries the value r before 1 - r and returns
    the lexicographically smallest (lo, hi).
    """
    r = rat(r)
    if not ZERO <= r <= ONE:
        raise PreconditionError("r must lie in [0, 1]")
    if f.length != ONE or g.length != ONE or f.integral() != ONE or g.integral() != ONE:
        raise PreconditionError("both functions must have integral 1 on [0, 1]")
    grid = sorted(set(f.breakpoints()) | set(g.breakpoints()))
    cum_f = [f.cumulative(x) for x in grid]
    cum_g = [g.cumulative(x) for x in grid]

    def slope(fn: LineStepFunction, i: int) -> Fraction:
        return fn.integral_between(grid[i], grid[i + 1]) / (grid[i + 1] - grid[i])

    ncell = len(grid) - 1
    sf = [slope(f, i) for i in range(ncell)]
    sg = [slope(g, i) for i in range(ncell)]

    targets = [r] if r == ONE - r else [r, ONE - r]
    for v in targets:
        best = None
        for i in range(ncell):
            for j in range(i, ncell):
                # P(hi) - P(lo) = v with P linear on each cell
                cf = (cum_f[j] - sf[j] * grid[j]) - (cum_f[i] - sf[i] * grid[i])
                cg = (cum_g[j] - sg[j] * grid[j]) - (cum_g[i] - sg[i] * grid[i])
                sol = _solve_2x2_in_box(
                    -sf[i], sf[j], v - cf,
                    -sg[i], sg[j], v - cg,
                    (grid[i], grid[i + 1]), (grid[j], grid[j + 1]),
                    le=(i == j),
                )
                if sol is not None and (best is None or sol < best):
                    best = sol
        if best is not None:
            return Interval(*best), v
    raise SolverInternalError("no common chord found; this contradicts the two-integrals theorem")


def find_common_chord_k(f: LineStepFunction, g: LineStepFunction, k: int) -> Interval:
    """Common chord with value exactly 1/k (guaranteed for integer k)."""
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    interval, achieved = find_common_chord(f, g, Fraction(1, k))
    if achieved != Fraction(1, k):  # pragma: no cover - integer-k guarantee
        raise SolverInternalError(f"achieved {achieved} instead of 1/{k}")
    return interval


def find_arc_chord_circle(f: LineStepFunction, w: Rational, c: Rational) -> Fraction:
    """Start x of a wrapping arc [x, x + w] with integral exactly c.

    Requires c to be the forced mean value (w/L) * total, which makes the
    window function cross c by the intermediate value theorem.
    """
    w, c = rat(w), rat(c)
    length = f.length
    if not ZERO <= w <= length:
        raise PreconditionError("arc length outside [0, L]")
    if c * length != w * f.integral():
        raise PreconditionError("target must equal (w/L) * total integral")
    pts = {ZERO, length}
    for b in f.breakpoints():
        pts.add(b % length)
        pts.add((b - w) % length)
    grid = sorted(pts)
    values = [(x, f.circle_window(x, w)) for x in grid]
    x = _first_root_of_window(values, c)
    if x is None:  # pragma: no cover - mean-value guarantee
        raise SolverInternalError("no arc found; this contradicts the circle mean-value argument")
    return x % length


# -- horizontal chords of curves ---------------------------------------------


Point2 = tuple[Fraction, Fraction]


def polyline_point(points: Sequence[Point2], s: Fraction) -> Point2:
    """Point at parameter s, where segment i spans [i, i + 1]."""
    if not ZERO <= s <= len(points) - 1:
        raise PreconditionError("parameter outside the curve")
    i = min(int(s), len(points) - 2)
    u = s - i
    (x0, y0), (x1, y1) = points[i], points[i + 1]
    return (x0 + u * (x1 - x0), y0 + u * (y1 - y0))


def horizontal_chord(polyline: Sequence[tuple[Rational, Rational]], k: int) -> tuple[Fraction, Fraction]:
    """Parameters s <= t with gamma(t) - gamma(s) == (B - A)/k exactly.

    Enumerates all segment pairs and solves the 2x2 systems; returns the
    lexicographically smallest (s, t).
    """
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    pts: list[Point2] = [(rat(x), rat(y)) for x, y in polyline]
    if len(pts) < 2:
        if len(pts) == 1:
            if k >= 1:
                return (ZERO, ZERO)
        raise PreconditionError("polyline needs at least one point")
    ax, ay = pts[0]
    bx, by = pts[-1]
    dx, dy = Fraction(bx - ax, k), Fraction(by - ay, k)
    box = (ZERO, ONE)
    best = None
    nseg = len(pts) - 1
    for i in range(nseg):
        dix, diy = pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1]
        for j in range(i, nseg):
            djx, djy = pts[j + 1][0] - pts[j][0], pts[j + 1][1] - pts[j][1]
            rx = dx - (pts[j][0] - pts[i][0])
            ry = dy - (pts[j][1] - pts[i][1])
            sol = _solve_2x2_in_box(-dix, djx, rx, -diy, djy, ry, box, box, le=(i == j))
            if sol is not None:
                cand = (i + sol[0], j + sol[1])
                if best is None or cand < best:
                    best = cand
        if best is not None and best[0] <= i:
            break  # later segment pairs cannot beat a chord starting earlier
    if best is None:
        raise SolverInternalError("no directed chord found; this contradicts the horizontal chord theorem")
    return best


# -- chords of periodic piecewise-linear functions ----------------------------


class PeriodicPL:
    """Continuous piecewise-linear function with period 1."""

    __slots__ = ("knots",)

    def __init__(self, knots: Sequence[tuple[Rational, Rational]]):
        ks = sorted((rat(x), rat(y)) for x, y in knots)
        if not ks or ks[0][0] != ZERO or ks[-1][0] != ONE:
            raise PreconditionError("knots must start at 0 and end at 1")
        if len({x for x, _ in ks}) != len(ks):
            raise PreconditionError("duplicate knot positions")
        if ks[0][1] != ks[-1][1]:
            raise PreconditionError("periodicity requires F(0) == F(1)")
        object.__setattr__(self, "knots", tuple(ks))

    def __setattr__(self, *a):
        raise AttributeError("PeriodicPL is immutable")

    def __call__(self, x: Rational) -> Fraction:
        x = rat(x) % ONE
        ks = self.knots
        for (x0, y0), (x1, y1) in zip(ks, ks[1:]):
            if x0 <= x <= x1:
                return y0 + (x - x0) * (y1 - y0) / (x1 - x0)
        raise AssertionError  # pragma: no cover

    def breakpoints(self) -> list[Fraction]:
        return [x for x, _ in self.knots]


def chord_of_periodic(func: PeriodicPL, t: Rational) -> Fraction:
    """x in [0, 1) with F(x + t) == F(x); every chord of a periodic map."""
    t = rat(t)
    shift = t % ONE
    pts = {ZERO, ONE}
    for b in func.breakpoints():
        pts.add(b % ONE)
        pts.add((b - shift) % ONE)
    grid = sorted(pts)
    values = [(x, func(x + shift) - func(x)) for x in grid]
    x = _first_root_of_window(values, ZERO)
    if x is None:  # pragma: no cover - zero-mean continuous difference
        raise SolverInternalError("no chord found; this contradicts periodicity")
    return x % ONE


# -- necklaces ----------------------------------------------------------------


BLACK = "B"
WHITE = "W"


@dataclass(frozen=True)
class NecklaceSplit:
    """A balanced window of 2N consecutive pearls and its interior cuts."""

    window: tuple[int, int]  # 1-indexed inclusive pearl range
    cuts: tuple[int, ...]    # cut after pearl c, strictly inside the strand


def necklace_split(pearls: Sequence[str], n_per_player: Optional[int] = None) -> NecklaceSplit:
    """Find 2N consecutive pearls holding exactly N black and N white.

    The window black-count changes by at most one per shift and the two
    extreme windows sum to the total black count, so some shift is exactly
    balanced (discrete intermediate value); the least start index wins.
    """
    beads = [p.upper() for p in pearls]
    if set(beads) - {BLACK, WHITE}:
        raise PreconditionError("pearls must be 'B' or 'W'")
    total = len(beads)
    n = n_per_player if n_per_player is not None else total // 4
    if n < 1 or total != 4 * n:
        raise PreconditionError("need exactly 4N pearls")
    blacks = sum(1 for b in beads if b == BLACK)
    if blacks != 2 * n:
        raise PreconditionError("need exactly 2N black and 2N white pearls")
    window = 2 * n
    count = sum(1 for b in beads[:window] if b == BLACK)
    for start in range(2 * n + 1):
        if count == n:
            cuts = tuple(c for c in (start, start + window) if 0 < c < total)
            return NecklaceSplit(window=(start + 1, start + window), cuts=cuts)
        if start + window < total:
            count += (beads[start + window] == BLACK) - (beads[start] == BLACK)
    raise SolverInternalError("no balanced window; this contradicts the discrete intermediate value step")
