"""Matrix realization of the orthosymplectic Lie superalgebra osp(2m+1|2n).

Matrices are (2m+2n+1)-square, sparse, with exact rational entries plus a
symbolic power of sqrt(2): the distinguished creation/annihilation generators
are sqrt(2)-multiples of elementary-matrix combinations, and every bracket of
two of them is again rational.  Index grading: rows/columns 1..2m+1 are even,
the remaining 2n are odd.  All stored matrices are parity homogeneous; mixed
sums are rejected so the superbracket sign is always well defined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .rational_linalg import build_column_solver, matrix_rank

EVEN, ODD = 0, 1


def generator_parity(j: int, m: int) -> int:
    """Degree of the j-th generator pair: even for j <= m, odd beyond."""
    return EVEN if j <= m else ODD


def index_parity(idx: int, m: int, n: int) -> int:
    return EVEN if idx <= 2 * m + 1 else ODD


@dataclass(frozen=True)
class GeneratorId:
    index: int  # 1..m+n
    sign: str   # '+' or '-'

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")


class SuperMatrix:
    """Sparse rational matrix with a sqrt(2) power tag and a parity tag.

    The represented value is sqrt(2)**sqrt2_power * entries.  Powers are
    normalized to 0 or 1 by folding sqrt(2)**2 = 2 into the entries; a matrix
    can only be exported as plain rational when the power is 0.
    """

    __slots__ = ("m", "n", "entries", "sqrt2_power", "parity")

    def __init__(self, m, n, entries=None, sqrt2_power=0, parity=None):
        self.m = m
        self.n = n
        ent = {}
        if entries:
            for (i, j), v in entries.items():
                v = Fraction(v)
                if v:
                    ent[(i, j)] = v
        if sqrt2_power < 0:
            raise ValueError("negative sqrt2 power")
        if sqrt2_power >= 2:
            fold = Fraction(2) ** (sqrt2_power // 2)
            ent = {k: v * fold for k, v in ent.items()}
            sqrt2_power %= 2
        self.entries = ent
        self.sqrt2_power = sqrt2_power if ent else 0
        self.parity = self._infer_parity(parity)

    @property
    def size(self) -> int:
        return 2 * self.m + 2 * self.n + 1

    def _infer_parity(self, declared):
        pars = {
            (index_parity(i, self.m, self.n) + index_parity(j, self.m, self.n)) % 2
            for (i, j) in self.entries
        }
        if len(pars) > 1:
            raise ValueError("matrix is not parity homogeneous")
        if not pars:
            return declared
        par = pars.pop()
        if declared is not None and declared != par:
            raise ValueError("declared parity contradicts the support")
        return par

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        if (self.m, self.n) != (other.m, other.n):
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return (self.sqrt2_power == other.sqrt2_power
                and self.entries == other.entries)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __add__(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("size mismatch")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.sqrt2_power != other.sqrt2_power:
            raise ValueError("cannot add different sqrt(2) powers exactly")
        if self.parity != other.parity:
            raise ValueError("cannot add matrices of different parity")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = ent.get(k, Fraction(0)) + v
        return SuperMatrix(self.m, self.n, ent, self.sqrt2_power, self.parity)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "SuperMatrix":
        c = Fraction(c)
        return SuperMatrix(
            self.m, self.n, {k: c * v for k, v in self.entries.items()},
            self.sqrt2_power, self.parity,
        )

    def __matmul__(self, other) -> "SuperMatrix":
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("size mismatch")
        by_row: dict[int, list] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        ent: dict[tuple[int, int], Fraction] = {}
        for (i, k), u in self.entries.items():
            for (j, v) in by_row.get(k, ()):
                key = (i, j)
                ent[key] = ent.get(key, Fraction(0)) + u * v
        par = None
        if self.parity is not None and other.parity is not None:
            par = (self.parity + other.parity) % 2
        return SuperMatrix(self.m, self.n, ent,
                           self.sqrt2_power + other.sqrt2_power, par)

    def rational_entries(self) -> dict:
        if self.sqrt2_power != 0:
            raise ValueError("matrix carries an odd sqrt(2) power")
        return dict(self.entries)

    def coordinates(self) -> dict:
        """Sparse coordinates tagged with the sqrt(2) power, for linear algebra."""
        return {(self.sqrt2_power, i, j): v for (i, j), v in self.entries.items()}

    def to_records(self) -> list[dict]:
        recs = []
        for (i, j), v in sorted(self.entries.items()):
            recs.append({
                "row": i, "col": j,
                "numerator": v.numerator, "denominator": v.denominator,
                "sqrt2_power": self.sqrt2_power,
            })
        return recs

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(r, sort_keys=True) for r in self.to_records())

    @classmethod
    def from_records(cls, m, n, records) -> "SuperMatrix":
        ent = {}
        power = 0
        for r in records:
            ent[(r["row"], r["col"])] = Fraction(r["numerator"], r["denominator"])
            power = r["sqrt2_power"]
        return cls(m, n, ent, power)

    def __repr__(self):
        tag = "" if self.sqrt2_power == 0 else " * sqrt2"
        return f"SuperMatrix(m={self.m}, n={self.n}, nnz={len(self.entries)}{tag})"


def _elementary(m, n, pairs, sqrt2_power=0):
    return SuperMatrix(m, n, {(i, j): Fraction(c) for (i, j, c) in pairs},
                       sqrt2_power)


def make_generator(gid: GeneratorId, m: int, n: int) -> SuperMatrix:
    """The distinguished sqrt(2)-scaled root vectors generating the algebra."""
    j = gid.index
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 with m + n >= 1")
    if not 1 <= j <= m + n:
        raise ValueError(f"generator index {j} out of range 1..{m + n}")
    z = 2 * m + 1
    if j <= m:
        if gid.sign == "+":
            pairs = [(j, z, 1), (z, j + m, -1)]
        else:
            pairs = [(z, j, 1), (j + m, z, -1)]
    else:
        b = j - m
        if gid.sign == "+":
            pairs = [(z, z + n + b, 1), (z + b, z, 1)]
        else:
            pairs = [(z, z + b, 1), (z + n + b, z, -1)]
    return _elementary(m, n, pairs, sqrt2_power=1)


def cartan(m: int, n: int, k: int) -> SuperMatrix:
    """Diagonal basis element h_k of the Cartan subalgebra."""
    if not 1 <= k <= m + n:
        raise ValueError(f"Cartan index {k} out of range")
    z = 2 * m + 1
    if k <= m:
        pairs = [(k, k, 1), (k + m, k + m, -1)]
    else:
        b = k - m
        pairs = [(z + b, z + b, 1), (z + n + b, z + n + b, -1)]
    return _elementary(m, n, pairs)


def superbracket(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """ab - (-1)^(deg a * deg b) ba for parity-homogeneous a, b."""
    if (a.m, a.n) != (b.m, b.n):
        raise ValueError("size mismatch")
    if a.is_zero() or b.is_zero():
        return SuperMatrix(a.m, a.n)
    if a.parity is None or b.parity is None:
        raise ValueError("superbracket needs homogeneous inputs")
    ab = a @ b
    ba = b @ a
    return ab - ba if (a.parity * b.parity) % 2 == 0 else ab + ba


# ---------------------------------------------------------------------------
# defining relations
# ---------------------------------------------------------------------------

SIGNS = ("+", "-")


def _sign_val(s: str) -> int:
    return 1 if s == "+" else -1


def triple_bracket_rhs(j, xi, k, eta, l, eps, gens, m):
    """Right-hand side of the defining triple relation as a matrix."""
    res = SuperMatrix(gens[(1, "+")].m, gens[(1, "+")].n)
    eps_pow = 1 if generator_parity(l, m) == EVEN else _sign_val(eps)
    if j == l and eps == ("-" if xi == "+" else "+"):
        sgn = -2 * eps_pow * (-1) ** (generator_parity(k, m) * generator_parity(l, m))
        res = res + gens[(k, eta)].scale(sgn)
    if k == l and eps == ("-" if eta == "+" else "+"):
        res = res + gens[(j, xi)].scale(2 * eps_pow)
    return res


def verify_triple_relations(m: int, n: int) -> dict:
    """Exhaustive check of the defining triple relations in the realization."""
    r = m + n
    gens = {(j, s): make_generator(GeneratorId(j, s), m, n)
            for j in range(1, r + 1) for s in SIGNS}
    checked = 0
    failures = []
    for j in range(1, r + 1):
        for k in range(1, r + 1):
            for xi in SIGNS:
                for eta in SIGNS:
                    inner = superbracket(gens[(j, xi)], gens[(k, eta)])
                    for l in range(1, r + 1):
                        for eps in SIGNS:
                            lhs = superbracket(inner, gens[(l, eps)])
                            rhs = triple_bracket_rhs(j, xi, k, eta, l, eps, gens, m)
                            checked += 1
                            if lhs != rhs:
                                failures.append(
                                    {"j": j, "xi": xi, "k": k, "eta": eta,
                                     "l": l, "eps": eps})
    return {"m": m, "n": n, "checked": checked, "failures": failures}


def verify_para_relations(m: int, n: int) -> dict:
    """Parafermion and paraboson double-commutator relations for the two sectors."""
    checked = 0
    failures = []
    gens = {(j, s): make_generator(GeneratorId(j, s), m, n)
            for j in range(1, m + n + 1) for s in SIGNS}
    # fermionic sector: [[f_j^xi, f_k^eta], f_l^eps]
    for j in range(1, m + 1):
        for k in range(1, m + 1):
            for l in range(1, m + 1):
                for xi in SIGNS:
                    for eta in SIGNS:
                        for eps in SIGNS:
                            lhs = superbracket(
                                superbracket(gens[(j, xi)], gens[(k, eta)]),
                                gens[(l, eps)])
                            rhs = SuperMatrix(m, n)
                            ce, cx, ch = map(_sign_val, (eps, xi, eta))
                            if k == l:
                                rhs = rhs + gens[(j, xi)].scale(
                                    Fraction((ce - ch) ** 2, 2))
                            if j == l:
                                rhs = rhs - gens[(k, eta)].scale(
                                    Fraction((ce - cx) ** 2, 2))
                            checked += 1
                            if lhs != rhs:
                                failures.append({"sector": "parafermion",
                                                 "j": j, "k": k, "l": l,
                                                 "signs": xi + eta + eps})
    # bosonic sector: [{b_j^xi, b_k^eta}, b_l^eps]
    for j in range(m + 1, m + n + 1):
        for k in range(m + 1, m + n + 1):
            for l in range(m + 1, m + n + 1):
                for xi in SIGNS:
                    for eta in SIGNS:
                        for eps in SIGNS:
                            lhs = superbracket(
                                superbracket(gens[(j, xi)], gens[(k, eta)]),
                                gens[(l, eps)])
                            rhs = SuperMatrix(m, n)
                            ce, cx, ch = map(_sign_val, (eps, xi, eta))
                            if j == l:
                                rhs = rhs + gens[(k, eta)].scale(ce - cx)
                            if k == l:
                                rhs = rhs + gens[(j, xi)].scale(ce - ch)
                            checked += 1
                            if lhs != rhs:
                                failures.append({"sector": "paraboson",
                                                 "j": j - m, "k": k - m,
                                                 "l": l - m,
                                                 "signs": xi + eta + eps})
    return {"m": m, "n": n, "checked": checked, "failures": failures}


# ---------------------------------------------------------------------------
# basis and structure constants
# ---------------------------------------------------------------------------

def basis_labels(m: int, n: int) -> list[tuple]:
    """Canonical basis labels: generators plus independent pair brackets.

    ('c', j, s) is a generator; ('bb', j, k, s1, s2) is the superbracket of
    generators j and k with signs s1, s2.  Same-sign pairs take j < k plus the
    bosonic diagonal j == k > m; mixed-sign pairs take all (j, k).
    """
    r = m + n
    labels: list[tuple] = [("c", j, s) for j in range(1, r + 1) for s in SIGNS]
    for s in ("+", "-"):
        for j in range(1, r + 1):
            for k in range(j, r + 1):
                if j == k and j <= m:
                    continue
                labels.append(("bb", j, k, s, s))
    for j in range(1, r + 1):
        for k in range(1, r + 1):
            labels.append(("bb", j, k, "+", "-"))
    return labels


def label_matrix(label: tuple, m: int, n: int) -> SuperMatrix:
    if label[0] == "c":
        _, j, s = label
        return make_generator(GeneratorId(j, s), m, n)
    _, j, k, s1, s2 = label
    return superbracket(make_generator(GeneratorId(j, s1), m, n),
                        make_generator(GeneratorId(k, s2), m, n))


def label_parity(label: tuple, m: int) -> int:
    if label[0] == "c":
        return generator_parity(label[1], m)
    return (generator_parity(label[1], m) + generator_parity(label[2], m)) % 2


class AlgebraBasis:
    """Ordered basis with verified structure constants.

    elements: list of (label, SuperMatrix); brackets[(a, b)] maps basis labels
    to rational coefficients of the expansion of the superbracket of a and b.
    """

    def __init__(self, m: int, n: int):
        self.m = m
        self.n = n
        self.labels = basis_labels(m, n)
        self.elements = [(lab, label_matrix(lab, m, n)) for lab in self.labels]
        mats = dict(self.elements)
        if any(mat.is_zero() for mat in mats.values()):
            raise ValueError("degenerate basis element")

        keys = sorted({k for mat in mats.values() for k in mat.coordinates()})
        columns = [mats[lab].coordinates() for lab in self.labels]
        solver = build_column_solver(columns, keys)

        self.brackets: dict[tuple, dict] = {}
        for a in self.labels:
            for b in self.labels:
                mat = superbracket(mats[a], mats[b])
                if mat.is_zero():
                    self.brackets[(a, b)] = {}
                    continue
                coeffs = solver(mat.coordinates())
                if coeffs is None:
                    raise ArithmeticError(
                        f"bracket of {a}, {b} does not lie in the span")
                self.brackets[(a, b)] = {
                    lab: c for lab, c in zip(self.labels, coeffs) if c
                }

    def matrix(self, label) -> SuperMatrix:
        return dict(self.elements)[label]

    def bracket_expansion(self, a, b) -> dict:
        return self.brackets[(a, b)]

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def even_labels(self) -> list[tuple]:
        return [lab for lab in self.labels if label_parity(lab, self.m) == EVEN]

    def diagonal_subalgebra_labels(self) -> list[tuple]:
        """The (m+n)^2 mixed-sign pair brackets spanning the gl(m|n) piece."""
        return [lab for lab in self.labels if lab[0] == "bb" and lab[3] != lab[4]]

    def diagonal_subalgebra_closed(self) -> bool:
        sub = set(self.diagonal_subalgebra_labels())
        for a in sub:
            for b in sub:
                if any(lab not in sub for lab in self.brackets[(a, b)]):
                    return False
        return True


def expected_dimension(m: int, n: int) -> int:
    return 2 * (m + n) ** 2 + m + 3 * n


def expected_even_dimension(m: int, n: int) -> int:
    return m * (2 * m + 1) + n * (2 * n + 1)


def structure_constants(m: int, n: int) -> AlgebraBasis:
    """Build and verify the full bracket table on the canonical basis."""
    if m + n < 1:
        raise ValueError("need m + n >= 1")
    basis = AlgebraBasis(m, n)
    if basis.dimension != expected_dimension(m, n):
        raise ArithmeticError("basis size does not match the root count")
    even = basis.even_labels()
    mats = dict(basis.elements)
    rows = []
    keys = sorted({k for lab in even for k in mats[lab].coordinates()})
    for lab in even:
        coords = mats[lab].coordinates()
        rows.append([coords.get(k, Fraction(0)) for k in keys])
    if matrix_rank(rows) != expected_even_dimension(m, n):
        raise ArithmeticError("even part has unexpected dimension")
    if not basis.diagonal_subalgebra_closed():
        raise ArithmeticError("mixed-sign pair brackets are not bracket-closed")
    return basis
