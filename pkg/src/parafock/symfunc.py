"""Partition combinatorics, supersymmetric Schur functions and truncated characters.

Everything here is exact integer arithmetic: characters are finitely truncated
multivariate series with nonnegative integer coefficients, and Schur-type
polynomials are computed by direct semistandard-tableau enumeration (no
determinants, no division).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def check_partition(la) -> tuple[int, ...]:
    """Normalize to a tuple, dropping trailing zeros; raise if not a partition."""
    parts = tuple(int(x) for x in la)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    if any(x < 0 for x in parts):
        raise ValueError(f"negative part in {la!r}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts not weakly decreasing in {la!r}")
    return parts


def conjugate(la) -> tuple[int, ...]:
    la = check_partition(la)
    if not la:
        return ()
    return tuple(sum(1 for x in la if x > j) for j in range(la[0]))


def weight(la) -> int:
    return sum(la)


@dataclass(frozen=True)
class FrobeniusForm:
    """Diagonal hook data of a partition: arm lengths and leg lengths."""

    arms: tuple[int, ...]
    legs: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.arms)

    def conjugate(self) -> "FrobeniusForm":
        return FrobeniusForm(self.legs, self.arms)


def frobenius(la) -> FrobeniusForm:
    """Arm/leg encoding: arms[k] = la[k]-k-1 boxes right of diagonal box k."""
    la = check_partition(la)
    lac = conjugate(la)
    r = 0
    while r < len(la) and la[r] >= r + 1:
        r += 1
    arms = tuple(la[k] - (k + 1) for k in range(r))
    legs = tuple(lac[k] - (k + 1) for k in range(r))
    return FrobeniusForm(arms, legs)


def from_frobenius(form: FrobeniusForm) -> tuple[int, ...]:
    arms, legs = form.arms, form.legs
    r = len(arms)
    if len(legs) != r:
        raise ValueError("arm/leg length mismatch")
    if any(arms[i] <= arms[i + 1] for i in range(r - 1)) or any(
        legs[i] <= legs[i + 1] for i in range(r - 1)
    ):
        raise ValueError("arms and legs must be strictly decreasing")
    if any(a < 0 for a in arms) or any(b < 0 for b in legs):
        raise ValueError("arms and legs must be nonnegative")
    rows = [arms[k] + k + 1 for k in range(r)]
    depth = legs[0] + 1 if r else 0
    for i in range(r + 1, depth + 1):
        rows.append(sum(1 for k in range(r) if legs[k] + k + 1 >= i))
    return check_partition(rows)


def in_hook(la, m: int, n: int) -> bool:
    """(m|n)-hook membership: the (m+1)-th part is at most n."""
    la = check_partition(la)
    return (la[m] if m < len(la) else 0) <= n


def arm_leg_offset(la):
    """Common value of arm-minus-leg over the diagonal, or None if not constant.

    The empty partition has no diagonal; it reports 0 but belongs to every
    offset family (see has_arm_leg_offset).
    """
    form = frobenius(la)
    if form.rank == 0:
        return 0
    offs = {a - b for a, b in zip(form.arms, form.legs)}
    return offs.pop() if len(offs) == 1 else None


def has_arm_leg_offset(la, p: int) -> bool:
    """True iff every Frobenius arm exceeds its leg by exactly p (rank 0 counts)."""
    form = frobenius(la)
    if form.rank == 0:
        return True
    return all(a - b == p for a, b in zip(form.arms, form.legs))


def sign_exponent(sigma, p: int) -> int:
    """Exponent (|sigma| - rank*(p-1))/2 of the alternating character sum; must be integral."""
    sigma = check_partition(sigma)
    r = frobenius(sigma).rank
    num = weight(sigma) - r * (p - 1)
    if num % 2 != 0:
        raise ArithmeticError(f"non-integral sign exponent for {sigma}, p={p}")
    return num // 2


def partitions_of(k: int, max_part: int | None = None):
    """Yield all partitions of k with parts bounded by max_part, largest first."""
    if k < 0:
        return
    if max_part is None:
        max_part = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, first):
            yield (first,) + rest


def hook_partitions(k: int, m: int, n: int, max_width: int | None = None):
    """Partitions of k in the (m|n)-hook, optionally with first part <= max_width."""
    for la in partitions_of(k, max_width):
        if in_hook(la, m, n):
            yield la


def offset_family_partitions(p: int, max_weight: int):
    """All partitions of weight <= max_weight whose arms exceed legs by exactly p.

    Generated directly from strictly decreasing leg sequences, so no scan over
    all partitions is needed.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    out = [()]

    def extend(legs, used):
        top = legs[-1] - 1 if legs else None
        lo = 0
        hi = (legs[-1] - 1) if legs else (max_weight - p - 1) // 2
        for b in range(hi, lo - 1, -1):
            w = used + 2 * b + p + 1
            if w > max_weight:
                continue
            new = legs + (b,)
            arms = tuple(x + p for x in new)
            out.append(from_frobenius(FrobeniusForm(arms, new)))
            extend(new, w)

    extend((), 0)
    out.sort(key=lambda la: (weight(la), la))
    return out


# ---------------------------------------------------------------------------
# tableau enumeration: (skew) Schur polynomials and Littlewood-Richardson
# ---------------------------------------------------------------------------

def _skew_cells(la, mu):
    la = check_partition(la)
    mu = check_partition(mu)
    if len(mu) > len(la) or any(mu[i] > la[i] for i in range(len(mu))):
        return None
    rows = []
    for i in range(len(la)):
        lo = mu[i] if i < len(mu) else 0
        rows.append((lo, la[i]))
    return tuple(rows)


@lru_cache(maxsize=None)
def skew_schur_monomials(la, mu, nvars: int) -> dict:
    """Monomial expansion of the skew Schur polynomial in nvars variables.

    Returns {exponent tuple: multiplicity}. Empty dict when the skew shape is
    not fillable (e.g. some column is taller than nvars) or mu is not contained
    in la.
    """
    rows = _skew_cells(la, mu)
    if rows is None:
        return {}
    out: dict[tuple[int, ...], int] = {}
    nrows = len(rows)
    counts = [0] * nvars

    def fill(i, prev_row):
        if i == nrows:
            key = tuple(counts)
            out[key] = out.get(key, 0) + 1
            return
        lo, hi = rows[i]
        row_vals = [0] * hi

        def fill_row(j, minval):
            if j == hi:
                fill(i + 1, row_vals)
                return
            lower = minval
            if i > 0 and rows[i - 1][0] <= j < len(prev_row) and prev_row[j]:
                lower = max(lower, prev_row[j] + 1)
            for v in range(lower, nvars + 1):
                counts[v - 1] += 1
                row_vals[j] = v
                fill_row(j + 1, v)
                counts[v - 1] -= 1
                row_vals[j] = 0

        fill_row(lo, 1)

    fill(0, [])
    return dict(out)


def schur_monomials(la, nvars: int) -> dict:
    return skew_schur_monomials(check_partition(la), (), nvars)


@lru_cache(maxsize=None)
def lr_coefficient(gamma, nu, sigma) -> int:
    """Littlewood-Richardson coefficient: multiplicity of gamma in nu * sigma.

    Counted as the number of semistandard fillings of gamma/nu with content
    sigma whose reverse reading word is a lattice word.
    """
    gamma = check_partition(gamma)
    nu = check_partition(nu)
    sigma = check_partition(sigma)
    if weight(gamma) != weight(nu) + weight(sigma):
        return 0
    rows = _skew_cells(gamma, nu)
    if rows is None:
        return 0
    nvals = len(sigma)
    remaining = list(sigma)
    grid = [[0] * hi for (_, hi) in rows]
    count = 0

    # reading order: rows top to bottom, cells right to left; lattice condition
    # is checked on placement counts as the word is produced.
    cells = []
    for i, (lo, hi) in enumerate(rows):
        for j in range(hi - 1, lo - 1, -1):
            cells.append((i, j))

    placed = [0] * (nvals + 1)

    def place(idx):
        nonlocal count
        if idx == len(cells):
            count += 1
            return
        i, j = cells[idx]
        lo, hi = rows[i]
        for v in range(1, nvals + 1):
            if remaining[v - 1] == 0:
                continue
            if j + 1 < hi and grid[i][j + 1] < v:
                continue  # weakly increasing along the row
            if i > 0 and rows[i - 1][0] <= j < rows[i - 1][1] and grid[i - 1][j] >= v:
                continue  # strictly increasing down the column
            if v > 1 and placed[v - 1] <= placed[v]:
                continue  # lattice word prefix condition
            grid[i][j] = v
            remaining[v - 1] -= 1
            placed[v] += 1
            place(idx + 1)
            placed[v] -= 1
            remaining[v - 1] += 1
            grid[i][j] = 0

    place(0)
    return count


def subpartitions(la):
    """All partitions contained in la."""
    la = check_partition(la)
    if not la:
        yield ()
        return

    def rec(i, prev):
        if i == len(la):
            yield ()
            return
        for v in range(min(la[i], prev), -1, -1):
            if v == 0:
                yield ()
                return
            for rest in rec(i + 1, v):
                yield (v,) + rest

    yield from rec(0, la[0])


# ---------------------------------------------------------------------------
# truncated characters
# ---------------------------------------------------------------------------

class TruncatedCharacter:
    """Series in x_1..x_m, y_1..y_n truncated at total degree cap.

    Coefficients are integers keyed by exponent tuples of length m+n.  The
    global half-integer prefactor is never expanded: it is carried as `offset`,
    a vector of doubled exponents, so term weights are offset + 2*exponents
    (doubled to stay integral for odd p).
    """

    __slots__ = ("m", "n", "cap", "offset", "coeffs")

    def __init__(self, m, n, cap, coeffs=None, offset=None):
        self.m = m
        self.n = n
        self.cap = cap
        self.offset = tuple(offset) if offset is not None else (0,) * (m + n)
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                if c and sum(e) <= cap:
                    self.coeffs[tuple(e)] = c

    @classmethod
    def one(cls, m, n, cap):
        return cls(m, n, cap, {(0,) * (m + n): 1})

    def nvars(self):
        return self.m + self.n

    def copy(self):
        return TruncatedCharacter(self.m, self.n, self.cap, self.coeffs, self.offset)

    def with_offset(self, offset):
        return TruncatedCharacter(self.m, self.n, self.cap, self.coeffs, offset)

    def _check(self, other):
        if (self.m, self.n, self.cap) != (other.m, other.n, other.cap):
            raise ValueError("incompatible truncated characters")

    def __add__(self, other):
        self._check(other)
        if self.offset != other.offset:
            raise ValueError("offset mismatch in character sum")
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return TruncatedCharacter(self.m, self.n, self.cap, coeffs, self.offset)

    def scale(self, k: int):
        return TruncatedCharacter(
            self.m, self.n, self.cap,
            {e: k * c for e, c in self.coeffs.items()}, self.offset,
        )

    def __mul__(self, other):
        self._check(other)
        offset = tuple(a + b for a, b in zip(self.offset, other.offset))
        coeffs: dict[tuple[int, ...], int] = {}
        cap = self.cap
        small, big = sorted((self.coeffs, other.coeffs), key=len)
        for e1, c1 in small.items():
            d1 = sum(e1)
            for e2, c2 in big.items():
                if d1 + sum(e2) > cap:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                coeffs[key] = coeffs.get(key, 0) + c1 * c2
        return TruncatedCharacter(self.m, self.n, cap, coeffs, offset)

    def geometric_divide(self, mono):
        """Multiply by 1/(1 - x^mono) = sum_k x^(k*mono), truncated."""
        mono = tuple(mono)
        d = sum(mono)
        if d <= 0:
            raise ValueError("geometric factor must have positive degree")
        reps = self.cap // d
        out = dict(self.coeffs)
        cur = dict(self.coeffs)
        for _ in range(reps):
            nxt = {}
            for e, c in cur.items():
                key = tuple(a + b for a, b in zip(e, mono))
                if sum(key) <= self.cap:
                    nxt[key] = c
            if not nxt:
                break
            for e, c in nxt.items():
                out[e] = out.get(e, 0) + c
            cur = nxt
        return TruncatedCharacter(self.m, self.n, self.cap, out, self.offset)

    def mul_binomial(self, mono, sign=1):
        """Multiply by (1 + sign * x^mono), truncated."""
        shifted = {}
        for e, c in self.coeffs.items():
            key = tuple(a + b for a, b in zip(e, mono))
            if sum(key) <= self.cap:
                shifted[key] = sign * c
        out = dict(self.coeffs)
        for e, c in shifted.items():
            out[e] = out.get(e, 0) + c
        return TruncatedCharacter(self.m, self.n, self.cap, out, self.offset)

    def __eq__(self, other):
        if not isinstance(other, TruncatedCharacter):
            return NotImplemented
        return (
            (self.m, self.n, self.offset) == (other.m, other.n, other.offset)
            and self.coeffs == other.coeffs
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def level_totals(self) -> list[int]:
        """Total multiplicity per total degree, degrees 0..cap."""
        totals = [0] * (self.cap + 1)
        for e, c in self.coeffs.items():
            totals[sum(e)] += c
        return totals

    def doubled_weight(self, expo) -> tuple[int, ...]:
        return tuple(o + 2 * e for o, e in zip(self.offset, expo))

    def items_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __repr__(self):
        return (
            f"TruncatedCharacter(m={self.m}, n={self.n}, cap={self.cap}, "
            f"terms={len(self.coeffs)})"
        )


def lowest_weight_offset(m: int, n: int, p: int) -> tuple[int, ...]:
    """Doubled exponent vector of the global prefactor: (-p,...,-p | p,...,p)."""
    return tuple([-p] * m + [p] * n)


def super_schur(la, m: int, n: int, cap: int | None = None) -> TruncatedCharacter:
    """Supersymmetric Schur polynomial s_la(x_1..x_m | y_1..y_n).

    Computed as the sum over partitions tau contained in la (with at most n
    columns) of skew Schur in x times Schur of the conjugate in y.  Identically
    zero exactly when la violates the (m|n)-hook condition.
    """
    la = check_partition(la)
    if cap is None:
        cap = weight(la)
    coeffs: dict[tuple[int, ...], int] = {}
    if weight(la) <= cap:
        for tau in subpartitions(la):
            if tau and tau[0] > n:
                continue
            xpart = skew_schur_monomials(la, tau, m)
            if not xpart:
                continue
            ypart = schur_monomials(conjugate(tau), n)
            if not ypart:
                continue
            for ex, cx in xpart.items():
                for ey, cy in ypart.items():
                    key = ex + ey
                    coeffs[key] = coeffs.get(key, 0) + cx * cy
    return TruncatedCharacter(m, n, cap, coeffs)


def _denominator_monomials(m, n):
    """Exponent vectors of the geometric denominator factors of the big product."""
    def e(i):
        v = [0] * (m + n)
        v[i] = 1
        return v

    monos = []
    for i in range(m):
        monos.append(tuple(e(i)))
    for i, k in itertools.combinations(range(m), 2):
        monos.append(tuple(a + b for a, b in zip(e(i), e(k))))
    for j in range(n):
        monos.append(tuple(e(m + j)))
    for j, l in itertools.combinations(range(n), 2):
        monos.append(tuple(a + b for a, b in zip(e(m + j), e(m + l))))
    return monos


def _numerator_monomials(m, n):
    monos = []
    for i in range(m):
        for j in range(n):
            v = [0] * (m + n)
            v[i] = 1
            v[m + j] = 1
            monos.append(tuple(v))
    return monos


def weight_series_product(m: int, n: int, cap: int) -> TruncatedCharacter:
    """prod(1+x_i y_j) / [prod(1-x_i) prod(1-x_i x_k) prod(1-y_j) prod(1-y_j y_l)]."""
    ch = TruncatedCharacter.one(m, n, cap)
    for mono in _numerator_monomials(m, n):
        ch = ch.mul_binomial(mono, +1)
    for mono in _denominator_monomials(m, n):
        ch = ch.geometric_divide(mono)
    return ch


def verma_character(m: int, n: int, p: int, cap: int,
                    method: str = "product") -> TruncatedCharacter:
    """Character of the induced module, with the lowest-weight offset attached.

    method="product" expands the closed product form; method="schur_sum" sums
    supersymmetric Schur polynomials over all hook partitions of each degree.
    """
    if method == "product":
        ch = weight_series_product(m, n, cap)
    elif method == "schur_sum":
        ch = TruncatedCharacter(m, n, cap)
        for d in range(cap + 1):
            for la in hook_partitions(d, m, n):
                ch = ch + super_schur(la, m, n, cap)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ch.with_offset(lowest_weight_offset(m, n, p))


def irreducible_character(m: int, n: int, p: int, cap: int) -> TruncatedCharacter:
    """Character of the irreducible lowest-weight module: hook partitions of width <= p."""
    ch = TruncatedCharacter(m, n, cap)
    for d in range(cap + 1):
        for la in hook_partitions(d, m, n, max_width=p):
            ch = ch + super_schur(la, m, n, cap)
    return ch.with_offset(lowest_weight_offset(m, n, p))


def alternating_cut_sum(m: int, n: int, p: int, cap: int) -> TruncatedCharacter:
    """Signed sum of s_sigma(x|y) over the hook partitions with arm-leg offset p."""
    ch = TruncatedCharacter(m, n, cap)
    for sigma in offset_family_partitions(p, cap):
        if not in_hook(sigma, m, n):
            continue
        sign = -1 if sign_exponent(sigma, p) % 2 else 1
        ch = ch + super_schur(sigma, m, n, cap).scale(sign)
    return ch


def character_formula_report(m: int, n: int, p: int, cap: int) -> dict:
    """Check the closed character formula and its underlying Schur-coefficient identity.

    Two independent checks:
      * the truncated series identity: irreducible character == Verma product
        form times the alternating cut sum;
      * the universal coefficient identity behind it, verified degree by degree
        through Littlewood-Richardson coefficients (no series arithmetic).
    """
    lhs = irreducible_character(m, n, p, cap)
    rhs = (weight_series_product(m, n, cap) * alternating_cut_sum(m, n, p, cap))
    rhs = rhs.with_offset(lowest_weight_offset(m, n, p))
    series_equal = lhs == rhs

    lr_failures = []
    sigmas = offset_family_partitions(p, cap)
    for d in range(cap + 1):
        for gamma in partitions_of(d):
            total = 0
            for sigma in sigmas:
                ws = weight(sigma)
                if ws > d:
                    continue
                sign = -1 if sign_exponent(sigma, p) % 2 else 1
                for nu in partitions_of(d - ws):
                    c = lr_coefficient(gamma, nu, sigma)
                    if c:
                        total += sign * c
            expected = 1 if (not gamma or gamma[0] <= p) else 0
            if total != expected:
                lr_failures.append({"gamma": list(gamma), "got": total,
                                    "expected": expected})
    return {
        "m": m, "n": n, "p": p, "degree": cap,
        "series_equal": series_equal,
        "lr_identity_failures": lr_failures,
        "ok": series_equal and not lr_failures,
    }
