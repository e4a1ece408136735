"""Finite semigroups and groups: convolution, means, and module actions.

A semigroup is stored as a Cayley table of indices.  Everything downstream
is exact index arithmetic: convolution scatters products through the table,
translation of a functional is convolution by a point mass, and the lattice
supremum of the translates of a mean is a pointwise maximum.  Means live in
l^1(S), which for finite S is the whole dual of l^inf(S).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .spaces import (
    AlgebraError,
    Exponent,
    FiniteMeasureSpace,
    InputError,
    LpVector,
    OptimizerBudget,
    _norm_arr,
)
from .norms import pq_spec
from .multibound import MultiBoundResult, multi_bound_set

__all__ = [
    "FiniteSemigroup",
    "JModuleElement",
    "MeanFunctional",
    "abs_normalize",
    "cancellativity_report",
    "constant_row_embed",
    "convolve",
    "cyclic",
    "dihedral",
    "direct_product",
    "dual_translate",
    "inversion_twist",
    "invariance_defect",
    "lattice_sup_mean",
    "left_zero",
    "mean_check",
    "module_action",
    "multi_invariance_bound",
    "point_mean",
    "rectangular_band",
    "right_shift",
    "right_zero",
    "row_evaluation",
    "symmetric",
    "tensor_action_identity_check",
    "uniform_mean",
]


class FiniteSemigroup:
    """A finite semigroup given by labels and a Cayley table of indices.

    table[s][t] is the index of the product st.  Associativity is checked
    on construction; an identity and inverses are detected when present, so
    is_group needs no extra input.
    """

    __slots__ = ("elements", "table", "identity", "inverse", "space")

    def __init__(self, elements, table, identity=None, inverse=None):
        self.elements = tuple(str(x) for x in elements)
        n = len(self.elements)
        if n < 1:
            raise InputError("a semigroup needs at least one element")
        if len(set(self.elements)) != n:
            raise InputError("element labels must be distinct")
        T = np.asarray(table, dtype=np.int64)
        if T.shape != (n, n):
            raise InputError("table must be square over the elements")
        if T.min() < 0 or T.max() >= n:
            raise InputError("table entries must index the elements")
        # (st)u = s(tu), all triples at once
        if not np.array_equal(T[T, :], T[:, T]):
            raise AlgebraError("product table is not associative")
        self.table = T
        ident = self._find_identity()
        if identity is not None:
            identity = int(identity)
            if ident != identity:
                raise AlgebraError("claimed identity is not one")
        self.identity = ident
        inv = self._find_inverse() if ident is not None else None
        if inverse is not None:
            if inv is None or list(inv) != [int(i) for i in inverse]:
                raise AlgebraError("claimed inverses do not invert")
        self.inverse = inv
        self.space = FiniteMeasureSpace(self.elements, np.ones(n))

    def _find_identity(self):
        n = self.table.shape[0]
        rng = np.arange(n)
        for e in range(n):
            if np.array_equal(self.table[e], rng) and np.array_equal(
                self.table[:, e], rng
            ):
                return e
        return None

    def _find_inverse(self):
        n = self.table.shape[0]
        e = self.identity
        inv = []
        for s in range(n):
            hits = np.nonzero(
                (self.table[s] == e) & (self.table[:, s] == e)
            )[0]
            if hits.size == 0:
                return None
            inv.append(int(hits[0]))
        return inv

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_group(self) -> bool:
        return self.identity is not None and self.inverse is not None

    def index(self, s) -> int:
        if isinstance(s, (int, np.integer)):
            i = int(s)
            if not 0 <= i < self.size:
                raise InputError(f"element index {i} out of range")
            return i
        try:
            return self.elements.index(str(s))
        except ValueError:
            raise InputError(f"unknown element {s!r}") from None

    def point_mass(self, s, p=1) -> LpVector:
        coords = np.zeros(self.size)
        coords[self.index(s)] = 1.0
        return LpVector(self.space, p, coords)

    def vector(self, coords, p=1) -> LpVector:
        return LpVector(self.space, p, np.asarray(coords))

    def to_dict(self) -> dict:
        d = {"elements": list(self.elements), "table": self.table.tolist()}
        if self.identity is not None:
            d["identity"] = self.identity
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteSemigroup":
        return cls(d["elements"], d["table"], d.get("identity"))

    def __repr__(self):
        return f"FiniteSemigroup({self.size} elements)"


# ---------------------------------------------------------------------------
# generators


def cyclic(n: int) -> FiniteSemigroup:
    """The cyclic group of order n, written additively."""
    if n < 1:
        raise InputError("n must be positive")
    idx = np.arange(n)
    return FiniteSemigroup(
        [f"g{i}" for i in range(n)], (idx[:, None] + idx[None, :]) % n
    )


def dihedral(n: int) -> FiniteSemigroup:
    """The dihedral group of order 2n: rotations r0..r{n-1} and
    reflections s0..s{n-1}, with (f1,k1)(f2,k2) = (f1+f2, +-k1+k2)."""
    if n < 1:
        raise InputError("n must be positive")
    labels = [f"r{k}" for k in range(n)] + [f"s{k}" for k in range(n)]
    T = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for f1 in range(2):
        for k1 in range(n):
            for f2 in range(2):
                for k2 in range(n):
                    f = (f1 + f2) % 2
                    k = (k2 + (k1 if f2 == 0 else -k1)) % n
                    T[f1 * n + k1, f2 * n + k2] = f * n + k
    return FiniteSemigroup(labels, T)


def left_zero(n: int) -> FiniteSemigroup:
    """xy = x for all x, y."""
    if n < 1:
        raise InputError("n must be positive")
    labels = [chr(ord("a") + i) if n <= 26 else f"x{i}" for i in range(n)]
    T = np.tile(np.arange(n)[:, None], (1, n))
    return FiniteSemigroup(labels, T)


def right_zero(n: int) -> FiniteSemigroup:
    """xy = y for all x, y."""
    if n < 1:
        raise InputError("n must be positive")
    labels = [chr(ord("a") + i) if n <= 26 else f"x{i}" for i in range(n)]
    T = np.tile(np.arange(n)[None, :], (n, 1))
    return FiniteSemigroup(labels, T)


def rectangular_band(m: int, n: int) -> FiniteSemigroup:
    """(i,j)(k,l) = (i,l) on an m-by-n grid."""
    if m < 1 or n < 1:
        raise InputError("dimensions must be positive")
    labels = [f"({i},{j})" for i in range(m) for j in range(n)]
    T = np.zeros((m * n, m * n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            for k in range(m):
                for l in range(n):
                    T[i * n + j, k * n + l] = i * n + l
    return FiniteSemigroup(labels, T)


def symmetric(n: int) -> FiniteSemigroup:
    """The symmetric group on n letters, n <= 5; composition acts on the
    right argument first."""
    if not 1 <= n <= 5:
        raise InputError("symmetric(n) supports 1 <= n <= 5")
    perms = sorted(permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    T = np.zeros((size, size), dtype=np.int64)
    for i, s in enumerate(perms):
        for j, t in enumerate(perms):
            T[i, j] = idx[tuple(s[t[x]] for x in range(n))]
    labels = ["".join(str(k) for k in p) for p in perms]
    return FiniteSemigroup(labels, T)


def direct_product(A: FiniteSemigroup, B: FiniteSemigroup) -> FiniteSemigroup:
    labels = [f"({a},{b})" for a in A.elements for b in B.elements]
    nB = B.size
    ia = np.repeat(np.arange(A.size), nB)
    ib = np.tile(np.arange(B.size), A.size)
    T = A.table[np.ix_(ia, ia)] * nB + B.table[np.ix_(ib, ib)]
    return FiniteSemigroup(labels, T)


# ---------------------------------------------------------------------------
# cancellativity


def cancellativity_report(S: FiniteSemigroup) -> dict:
    """Classify the translation maps of S.

    uniform_constant is the largest fiber max |{u : su = t}|; it is 1
    exactly when S is left-cancellative and it controls the convolution
    module bound on l^p.
    """
    T = S.table
    n = S.size
    left = all(len(set(T[s].tolist())) == n for s in range(n))
    right = all(len(set(T[:, s].tolist())) == n for s in range(n))
    fibers = max(int(np.bincount(T[s], minlength=n).max()) for s in range(n))
    rng = np.arange(n)
    has_left = any(np.array_equal(T[e], rng) for e in range(n))
    has_right = any(np.array_equal(T[:, e], rng) for e in range(n))
    return {
        "left_cancellative": left,
        "right_cancellative": right,
        "cancellative": left and right,
        "weakly_left_cancellative": True,
        "uniform_constant": fibers,
        "has_left_identity": has_left,
        "has_right_identity": has_right,
        "is_group": S.is_group,
    }


# ---------------------------------------------------------------------------
# convolution


def _same_semigroup_vector(S: FiniteSemigroup, f: LpVector, name: str):
    if f.space != S.space:
        raise InputError(f"{name} must live on the semigroup's atoms")


def convolve(S: FiniteSemigroup, f: LpVector, g: LpVector) -> LpVector:
    """(f * g)(s) = sum over tu = s of f(t) g(u); result keeps g's
    exponent.  The l^1-into-l^p module bound carries the constant
    uniform_constant^(1/p') from the cancellativity report."""
    _same_semigroup_vector(S, f, "f")
    _same_semigroup_vector(S, g, "g")
    if f.p != Exponent(1):
        raise InputError("the left factor must carry exponent 1")
    prod = f.coords[:, None] * g.coords[None, :]
    out = np.zeros(
        S.size, dtype=np.complex128 if np.iscomplexobj(prod) else np.float64
    )
    np.add.at(out, S.table.ravel(), prod.ravel())
    return LpVector(S.space, g.p, out)


# ---------------------------------------------------------------------------
# means


@dataclass(frozen=True)
class MeanFunctional:
    """An element of l^1(S) acting on l^inf(S) by the plain sum pairing."""

    semigroup: FiniteSemigroup
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(
            self.coords,
            dtype=np.complex128 if np.iscomplexobj(self.coords) else np.float64,
        )
        if c.shape != (self.semigroup.size,):
            raise InputError("a functional needs one coordinate per element")
        object.__setattr__(self, "coords", c)

    @property
    def norm(self) -> float:
        return float(np.abs(self.coords).sum())

    @property
    def unit_pairing(self):
        total = self.coords.sum()
        return float(total.real) if not np.iscomplexobj(self.coords) else complex(total)

    def as_l1(self) -> LpVector:
        return LpVector(self.semigroup.space, 1, self.coords)


def uniform_mean(S: FiniteSemigroup) -> MeanFunctional:
    return MeanFunctional(S, np.full(S.size, 1.0 / S.size))


def point_mean(S: FiniteSemigroup, s) -> MeanFunctional:
    coords = np.zeros(S.size)
    coords[S.index(s)] = 1.0
    return MeanFunctional(S, coords)


def mean_check(lam: MeanFunctional) -> dict:
    norm = lam.norm
    pairing = lam.unit_pairing
    is_mean = abs(norm - 1.0) <= 1e-12 and abs(pairing - 1.0) <= 1e-12
    return {"is_mean": bool(is_mean), "norm": norm, "unit_pairing": pairing}


def dual_translate(s, lam: MeanFunctional) -> MeanFunctional:
    """The point mass at s convolved with the functional: the coordinate
    at t collects lam over the fiber {v : sv = t}.  Preserves the pairing
    with the constant one; an isometry exactly when left translation by s
    is injective."""
    S = lam.semigroup
    si = S.index(s)
    out = np.zeros(S.size, dtype=lam.coords.dtype)
    np.add.at(out, S.table[si], lam.coords)
    return MeanFunctional(S, out)


def invariance_defect(lam: MeanFunctional) -> float:
    S = lam.semigroup
    worst = 0.0
    for s in range(S.size):
        d = float(np.abs(dual_translate(s, lam).coords - lam.coords).sum())
        worst = max(worst, d)
    return worst


def multi_invariance_bound(
    p, q, lam: MeanFunctional, budget: OptimizerBudget | None = None
) -> MultiBoundResult:
    """Multi-bound of the translate set {s.lam : s in S} in the pq:<p>,<q>
    norm over l^1(S)."""
    S = lam.semigroup
    translates = [dual_translate(s, lam).as_l1() for s in range(S.size)]
    return multi_bound_set(pq_spec(p, q), translates, budget)


def abs_normalize(lam: MeanFunctional) -> MeanFunctional:
    """Pointwise modulus, scaled to mass one.  On a group this cannot
    increase the multi-invariance bound beyond the original over its norm,
    since translation commutes with the modulus."""
    norm = lam.norm
    if norm == 0:
        raise InputError("cannot normalize the zero functional")
    return MeanFunctional(lam.semigroup, np.abs(lam.coords) / norm)


def lattice_sup_mean(lam: MeanFunctional) -> MeanFunctional:
    """Pointwise supremum of all translates of a nonnegative functional on
    a group, normalized to mass one.  The sup over the whole group is
    translation-invariant on the nose, so the output is a left-invariant
    mean."""
    S = lam.semigroup
    if not S.is_group:
        raise AlgebraError("the lattice supremum construction needs a group")
    c = lam.coords
    if np.iscomplexobj(c) or np.any(c < 0):
        raise InputError("needs a nonnegative functional")
    if not c.any():
        raise InputError("cannot normalize the zero functional")
    sup = np.zeros(S.size)
    for s in range(S.size):
        np.maximum(sup, dual_translate(s, lam).coords.real, out=sup)
    return MeanFunctional(S, sup / sup.sum())


# ---------------------------------------------------------------------------
# the inversion twist


def inversion_twist(S: FiniteSemigroup, f: LpVector) -> LpVector:
    """f composed with inversion; an isometric anti-homomorphism of the
    convolution algebra of a group."""
    if not S.is_group:
        raise AlgebraError("inversion needs a group")
    _same_semigroup_vector(S, f, "f")
    return LpVector(S.space, f.p, f.coords[np.asarray(S.inverse)])


# ---------------------------------------------------------------------------
# the translation module of matrices


@dataclass(frozen=True)
class JModuleElement:
    """A matrix U(s,t) over S with the sup-over-rows l^p norm."""

    semigroup: FiniteSemigroup
    p: Exponent
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", Exponent(self.p))
        U = np.asarray(
            self.matrix,
            dtype=np.complex128 if np.iscomplexobj(self.matrix) else np.float64,
        )
        n = self.semigroup.size
        if U.shape != (n, n):
            raise InputError("module element must be square over the elements")
        object.__setattr__(self, "matrix", U)

    @property
    def norm(self) -> float:
        ones = np.ones(self.semigroup.size)
        return float(
            max(_norm_arr(row, ones, self.p) for row in self.matrix)
        )


def module_action(f: LpVector, U: JModuleElement) -> JModuleElement:
    """(f * U)(s,t) = sum of f(r) U(x,y) over rx = s, ry = t.

    Associative against convolution; the point mass at an identity acts
    as the identity.  The row-sup norm grows by at most the uniform
    fiber constant to the power 1/p'.
    """
    S = U.semigroup
    _same_semigroup_vector(S, f, "f")
    if f.p != Exponent(1):
        raise InputError("the acting vector must carry exponent 1")
    out = np.zeros(
        (S.size, S.size),
        dtype=np.complex128
        if np.iscomplexobj(U.matrix) or np.iscomplexobj(f.coords)
        else np.float64,
    )
    for r in range(S.size):
        fr = f.coords[r]
        if fr == 0:
            continue
        row = S.table[r]
        np.add.at(out, (row[:, None], row[None, :]), fr * U.matrix)
    return JModuleElement(S, U.p, out)


def constant_row_embed(S: FiniteSemigroup, g: LpVector) -> JModuleElement:
    """Embed a vector as the matrix with every row equal to it.

    A module morphism: acting by f on the embedding of g equals embedding
    the convolution f * g.  Row evaluation at any vector of total mass one
    is a left inverse.
    """
    _same_semigroup_vector(S, g, "g")
    return JModuleElement(S, g.p, np.tile(g.coords, (S.size, 1)))


def row_evaluation(U: JModuleElement, a: LpVector) -> LpVector:
    """Pair the rows of U against a: the vector sum_s a(s) U(s, .)."""
    S = U.semigroup
    _same_semigroup_vector(S, a, "a")
    return LpVector(S.space, U.p, a.coords @ U.matrix)


def tensor_action_identity_check(S: FiniteSemigroup, lam: LpVector, x: LpVector, s) -> dict:
    """Both sides of the translate-and-embed identity for an elementary
    tensor on a group: pairing against the right translate of lam equals
    acting by the inverse point mass on the tensor with the left translate
    of x.  Returns the materialized sides and their gap."""
    if not S.is_group:
        raise AlgebraError("the identity needs a group")
    _same_semigroup_vector(S, lam, "lam")
    _same_semigroup_vector(S, x, "x")
    si = S.index(s)
    inv = np.asarray(S.inverse)
    # (lam . s)(a) = lam(sa); (s . x)(t) = x(s^{-1} t)
    lam_s = lam.coords[S.table[si]]
    s_x = x.coords[S.table[int(inv[si])]]
    lhs = JModuleElement(S, x.p, np.outer(lam_s, x.coords))
    rhs = module_action(
        S.point_mass(int(inv[si])),
        JModuleElement(S, x.p, np.outer(lam.coords, s_x)),
    )
    err = float(np.abs(lhs.matrix - rhs.matrix).max())
    return {"lhs": lhs, "rhs": rhs, "max_err": err}


def right_shift(S: FiniteSemigroup, t, f: LpVector) -> LpVector:
    """Collect coefficients along right multiplication: the output at s is
    f at st.  Splits right translation on the basis vectors it can reach;
    indices off the range contribute nothing."""
    _same_semigroup_vector(S, f, "f")
    return LpVector(S.space, f.p, f.coords[S.table[:, S.index(t)]])
