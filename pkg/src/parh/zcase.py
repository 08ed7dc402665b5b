"""Constructive algebra of the augmentation ideal, specialized to the integers.

The augmentation ideal of the partial group algebra is generated, as a left
module, by the elements f_g = [g] - e_g.  Over the integers (written
additively, with f_i short for the generator at the group element i) the
two basic relations are

    e_i f_{i+j} = e_{i+j} f_i + [i] f_j        and        (e_i - 1) f_i = 0,

and the level filtration V_k = R f_1 + ... + R f_k is controlled by the
quotient identity  V_{k+1} / V_k = R / (R (1 - e_{k+1}) + sum R e_i).

This module provides the pieces of that story that can be checked by exact
computation:

  * the generators f_i and exhaustive verification of the relations;
  * the standard combination of commuting idempotents into a single one
    with the same span, through pairwise orthogonal summands;
  * the skew-symmetric cancellation algorithm: given commuting idempotents
    with sum r_1 e_1 + ... + r_k e_k = 0, produce a skew-symmetric matrix M
    and elements b_i with r_i = sum_j M[i][j] e_j + b_i (1 - e_i);
  * bounded-window linear algebra over the integers: V_k spans, the two
    containments behind the quotient identity, and decomposition of
    augmentation-zero elements over the f_i;
  * seeded samplers for property tests of all of the above.

Everything is exact.  A window bounds which canonical monomials may appear
in a coordinate vector; a vector whose support leaves the declared window
raises WindowEscapeError instead of being truncated, so no check can pass
by silently dropping terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from random import Random
from typing import Sequence

from .exel import AlgebraElement, PartialGroupAlgebra, SElement
from .groups import INTEGERS, GroupElement
from .linalg import (
    Column,
    Eliminator,
    Field,
    QQ,
    Scalar,
    SizeCapError,
    SparseMatrix,
    kernel_basis,
)

Z_WINDOW_CAP = 200_000


class WindowEscapeError(RuntimeError):
    """A computed vector has support outside its declared window."""


def _algebra(x: AlgebraElement) -> PartialGroupAlgebra:
    return PartialGroupAlgebra(x.group, x.field)


def f_element(g, field: Field = QQ) -> AlgebraElement:
    """The augmentation-ideal generator [g] - e_g.

    Accepts an integer (an element of the additive integer group) or a
    GroupElement of any group.  The identity gives zero.
    """
    if isinstance(g, GroupElement):
        group, idx = g.group, g.index
    elif isinstance(g, int):
        group, idx = INTEGERS, g
    else:
        raise TypeError("expected an integer or a GroupElement")
    algebra = PartialGroupAlgebra(group, field)
    return algebra.bracket(idx) - algebra.idem(idx)


def verify_f_relations(bound: int, field: Field = QQ) -> dict:
    """Exhaustive check of the basic f-relations over the integers.

    For all |i|, |j| <= bound this verifies, by algebra multiplication,

        e_i f_{i+j} = e_{i+j} f_i + [i] f_j,
        (e_i - 1) f_i = 0,
        [i] f_j = e_i f_{i+j} - e_{i+j} f_i,

    together with f_0 = 0 and augmentation zero for every f_i.  The report
    carries any counterexample instead of raising.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    algebra = PartialGroupAlgebra(INTEGERS, field)

    def f(n: int) -> AlgebraElement:
        return f_element(n, field)

    failures: list[dict] = []
    checked = 0
    if not f(0).is_zero():
        failures.append({"identity": "f_0 = 0"})
    for i in range(-bound, bound + 1):
        if not f(i).augmentation().is_zero():
            failures.append({"i": i, "identity": "augmentation(f_i) = 0"})
        if not ((algebra.idem(i) - algebra.one()) * f(i)).is_zero():
            failures.append({"i": i, "identity": "(e_i - 1) f_i = 0"})
        checked += 2
        for j in range(-bound, bound + 1):
            lhs = algebra.idem(i) * f(i + j)
            rhs = algebra.idem(i + j) * f(i) + algebra.bracket(i) * f(j)
            if lhs != rhs:
                failures.append(
                    {"i": i, "j": j, "identity": "e_i f_{i+j} = e_{i+j} f_i + [i] f_j"}
                )
            act = algebra.bracket(i) * f(j)
            dif = algebra.idem(i) * f(i + j) - algebra.idem(i + j) * f(i)
            if act != dif:
                failures.append(
                    {"i": i, "j": j, "identity": "[i] f_j = e_i f_{i+j} - e_{i+j} f_i"}
                )
            checked += 2
    return {
        "bound": bound,
        "field": field.name,
        "checked": checked,
        "failures": failures,
        "ok": not failures,
    }


# ---------------------------------------------------------------------------
# Idempotent combination and skew-symmetric cancellation.


def _check_commuting_idempotents(es: Sequence[AlgebraElement]) -> None:
    for e in es:
        if e * e != e:
            raise ValueError(f"not an idempotent: {e.render()}")
    for a, b in combinations(es, 2):
        if a * b != b * a:
            raise ValueError("idempotents do not commute")


def orthogonal_parts(es: Sequence[AlgebraElement]) -> list[AlgebraElement]:
    """The summands e_1, (1-e_1) e_2, ..., (1-e_1)...(1-e_{n-1}) e_n.

    These are pairwise orthogonal idempotents whose sum is an idempotent
    spanning the same ideal as the inputs together.
    """
    if not es:
        return []
    _check_commuting_idempotents(es)
    one = _algebra(es[0]).one()
    parts = []
    shrink = one
    for e in es:
        parts.append(shrink * e)
        shrink = shrink * (one - e)
    return parts


def combine_idempotents(es: Sequence[AlgebraElement]) -> AlgebraElement:
    """Combine commuting idempotents into one with the same joint span."""
    parts = orthogonal_parts(es)
    if not parts:
        raise ValueError("need at least one idempotent")
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


@dataclass(frozen=True)
class CancellationResult:
    """Witness for a relation sum r_i e_i = 0 between commuting idempotents.

    matrix is skew-symmetric with zero diagonal and
    r_i = sum_j matrix[i][j] e_j + b[i] (1 - e_i) for every i.
    """

    matrix: tuple[tuple[AlgebraElement, ...], ...]
    b: tuple[AlgebraElement, ...]

    def skew_symmetric(self) -> bool:
        k = len(self.b)
        for i in range(k):
            if not self.matrix[i][i].is_zero():
                return False
            for j in range(i + 1, k):
                if self.matrix[i][j] != -self.matrix[j][i]:
                    return False
        return True


def cancellation_reconstructs(
    es: Sequence[AlgebraElement],
    rs: Sequence[AlgebraElement],
    result: CancellationResult,
) -> bool:
    """Whether the decomposition reproduces every r_i exactly."""
    if not es:
        return not result.b
    one = _algebra(es[0]).one()
    for i, r in enumerate(rs):
        total = result.b[i] * (one - es[i])
        for j, e in enumerate(es):
            total = total + result.matrix[i][j] * e
        if total != r:
            return False
    return True


def _cancel(
    es: list[AlgebraElement], rs: list[AlgebraElement], one: AlgebraElement
) -> tuple[list[list[AlgebraElement]], list[AlgebraElement]]:
    zero = one - one
    k = len(es)
    if k == 0:
        return [], []
    if k == 1:
        # r_1 e_1 = 0 means r_1 = r_1 (1 - e_1); take b_1 = r_1.
        return [[zero]], [rs[0]]
    if k == 2:
        r = rs[1]
        b1 = rs[0] + r * es[1]
        b2 = rs[1] - r * es[0]
        return [[zero, -r], [r, zero]], [b1, b2]
    ek = es[-1]
    shrink = one - ek
    inner_es = [e * shrink for e in es[:-1]]
    m0, tilde = _cancel(inner_es, rs[:-1], one)
    x = rs[-1]
    for bt, e in zip(tilde, es[:-1]):
        x = x + bt * e
    if not (x * ek).is_zero():
        raise RuntimeError("cancellation recursion lost the annihilation step")
    mat = [[zero] * k for _ in range(k)]
    for i in range(k - 1):
        for j in range(k - 1):
            mat[i][j] = m0[i][j] * shrink
        scaled = tilde[i] * es[i]
        mat[i][k - 1] = scaled
        mat[k - 1][i] = -scaled
    return mat, tilde + [x]


def cancellation_decompose(
    es: Sequence[AlgebraElement], rs: Sequence[AlgebraElement]
) -> CancellationResult:
    """Decompose a vanishing sum over commuting idempotents.

    Given sum r_i e_i = 0, returns a skew-symmetric matrix M with zero
    diagonal and elements b_i such that

        r_i = sum_j M[i][j] e_j + b_i (1 - e_i).

    The recursion peels the last idempotent: the first k-1 terms satisfy
    the same hypothesis against e_i (1 - e_k), and the step that frees r_k
    solves x e = 0 by taking b = x itself.
    """
    if len(es) != len(rs):
        raise ValueError("need one coefficient per idempotent")
    if not es:
        return CancellationResult((), ())
    _check_commuting_idempotents(es)
    total = rs[0] * es[0]
    for r, e in zip(rs[1:], es[1:]):
        total = total + r * e
    if not total.is_zero():
        raise ValueError("hypothesis fails: sum r_i e_i is not zero")
    one = _algebra(es[0]).one()
    mat, b = _cancel(list(es), list(rs), one)
    result = CancellationResult(tuple(tuple(row) for row in mat), tuple(b))
    if not result.skew_symmetric() or not cancellation_reconstructs(es, rs, result):
        raise RuntimeError("cancellation produced an invalid decomposition")
    return result


# ---------------------------------------------------------------------------
# Bounded windows over the integers.


def window_basis(bound: int, cap: int = Z_WINDOW_CAP) -> list[SElement]:
    """All canonical pairs (A, m) with A inside [-bound, bound].

    A always contains 0, and m runs over A.  Listed in a fixed order:
    member sets by size then lexicographically, then m.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    others = [m for m in range(-bound, bound + 1) if m != 0]
    count = (bound + 1) << (2 * bound)
    if count > cap:
        raise SizeCapError(
            f"window basis would hold {count} elements (cap {cap})"
        )
    out = []
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            members = tuple(sorted((0,) + extra))
            for m in members:
                out.append(SElement(INTEGERS, members, m))
    return out


def b_window_basis(bound: int, cap: int = Z_WINDOW_CAP) -> list[SElement]:
    """The idempotent part of the window: pairs (A, 0)."""
    return [s for s in window_basis(bound, cap) if s.g == 0]


class WindowSpace:
    """Sparse coordinates over window-bounded canonical monomials.

    Rows are registered lazily, in first-seen order.  Registering a
    monomial with a member outside [-bound, bound] raises
    WindowEscapeError; nothing is ever truncated.
    """

    __slots__ = ("field", "bound", "rows", "labels")

    def __init__(self, field: Field, bound: int) -> None:
        self.field = field
        self.bound = bound
        self.rows: dict[SElement, int] = {}
        self.labels: list[SElement] = []

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, s: SElement) -> int:
        got = self.rows.get(s)
        if got is not None:
            return got
        if any(abs(m) > self.bound for m in s.members):
            raise WindowEscapeError(
                f"{s.render()} escapes the window [-{self.bound}, {self.bound}]"
            )
        idx = len(self.labels)
        self.rows[s] = idx
        self.labels.append(s)
        return idx

    def column(self, x: AlgebraElement) -> Column:
        return {self.index(s): c for s, c in x.coeffs.items()}

    def element(self, col: Column) -> AlgebraElement:
        coeffs = {self.labels[r]: c for r, c in col.items()}
        return AlgebraElement(INTEGERS, self.field, coeffs)


class VkSpan:
    """The visible part of the level-k span V_k = R f_1 + ... + R f_k.

    Built from all products r * f_j with 1 <= j <= k and r running over
    the canonical window basis at multiplier_bound = bound - k - 1, so
    every product stays strictly inside the declared window.  Membership
    queries reduce against the accumulated span.
    """

    __slots__ = ("k", "bound", "multiplier_bound", "space", "columns", "_elim")

    def __init__(self, k: int, bound: int, field: Field = QQ,
                 cap: int = Z_WINDOW_CAP) -> None:
        if k < 1:
            raise ValueError("level k must be at least 1")
        if bound < k + 1:
            raise ValueError("window too small: need bound >= k + 1")
        self.k = k
        self.bound = bound
        self.multiplier_bound = bound - k - 1
        self.space = WindowSpace(field, bound)
        self.columns: list[Column] = []
        self._elim = Eliminator(field)
        algebra = PartialGroupAlgebra(INTEGERS, field)
        fs = [f_element(j, field) for j in range(1, k + 1)]
        products = []
        for r in window_basis(self.multiplier_bound, cap):
            mono = algebra.monomial(r)
            for f in fs:
                x = mono * f
                if not x.is_zero():
                    products.append(x)
        # group columns by member set: differences never mix member sets,
        # so local insertion keeps elimination chains short
        products.sort(key=lambda x: min(s.sort_key() for s in x.coeffs))
        if len(products) > cap:
            raise SizeCapError(
                f"level span would hold {len(products)} columns (cap {cap})"
            )
        for x in products:
            col = self.space.column(x)
            self.columns.append(col)
            self._elim.add(dict(col))

    @property
    def rank(self) -> int:
        return self._elim.rank

    def residue_column(self, col: Column) -> Column:
        return self._elim.reduce(dict(col))

    def contains(self, x: AlgebraElement) -> bool:
        return not self.residue_column(self.space.column(x))


def quotient_check(k: int, bound: int, field: Field = QQ,
                   cap: int = Z_WINDOW_CAP) -> dict:
    """Window verification of the level-quotient description.

    Inside the window the multiplier r ranges over the canonical basis at
    domain_bound = bound - 2k - 2.  Two subspaces of that domain span are
    compared:

      S1 = kernel of r -> (r * f_{k+1} modulo the visible V_k span),
      S2 = span of the in-window products r (1 - e_{k+1}) and r e_i, i <= k.

    S2 inside S1 must hold exactly.  S1 inside S2 is expected; a failure
    is reported as a violation for review (window artifact against genuine
    counterexample) rather than raised.
    """
    if k < 1:
        raise ValueError("level k must be at least 1")
    if bound < 2 * k + 4:
        raise ValueError("window too small: need bound >= 2k + 4")
    domain_bound = bound - 2 * k - 2
    span = VkSpan(k, bound, field, cap)
    algebra = PartialGroupAlgebra(INTEGERS, field)
    fk1 = f_element(k + 1, field)
    domain = window_basis(domain_bound, cap)
    domain_pos = {s: t for t, s in enumerate(domain)}

    entries: dict[tuple[int, int], Scalar] = {}
    for t, r in enumerate(domain):
        res = span.residue_column(span.space.column(algebra.monomial(r) * fk1))
        for row, c in res.items():
            entries[(row, t)] = c
    residue_matrix = SparseMatrix(
        field, span.space.dim, len(domain), entries
    )
    s1_vectors = kernel_basis(residue_matrix)

    ideal_gens = [algebra.one() - algebra.idem(k + 1)]
    ideal_gens += [algebra.idem(i) for i in range(1, k + 1)]
    s2_elements: list[AlgebraElement] = []
    s2_vectors: list[Column] = []
    for r in domain:
        mono = algebra.monomial(r)
        for z in ideal_gens:
            y = mono * z
            if y.is_zero():
                continue
            if any(s not in domain_pos for s in y.coeffs):
                continue  # product leaves the domain window; not a domain vector
            s2_elements.append(y)
            s2_vectors.append({domain_pos[s]: c for s, c in y.coeffs.items()})

    violations: list[dict] = []
    for y in s2_elements:
        if not span.contains(y * fk1):
            violations.append(
                {"direction": "s2_in_s1", "element": y.render()}
            )
    s2_elim = Eliminator(field)
    for col in s2_vectors:
        s2_elim.add(dict(col))
    s1_in_s2 = True
    for vec in s1_vectors:
        if s2_elim.reduce(dict(vec)):
            s1_in_s2 = False
            combo = " + ".join(
                f"({c}) {domain[t].render()}" for t, c in sorted(vec.items())
            )
            violations.append({"direction": "s1_in_s2", "element": combo})
    s2_in_s1 = not any(v["direction"] == "s2_in_s1" for v in violations)
    return {
        "k": k,
        "N": bound,
        "field": field.name,
        "domain_bound": domain_bound,
        "domain_dim": len(domain),
        "s1_dim": len(s1_vectors),
        "s2_dim": s2_elim.rank,
        "vk_rank": span.rank,
        "s2_in_s1": s2_in_s1,
        "s1_in_s2": s1_in_s2,
        "violations": violations,
        "ok": s2_in_s1 and s1_in_s2,
    }


# ---------------------------------------------------------------------------
# Decomposition over the f generators.


def ig_decompose(x: AlgebraElement) -> dict[int, AlgebraElement]:
    """Coefficients b_g with x = sum b_g f_g, for augmentation-zero x.

    Each canonical pair (A, g) contributes (A, 1) to b_g, because
    (A, g) - (A, 1) = (A, 1) * f_g.  The returned coefficients are the
    canonical representatives: b_g e_g = b_g already, and b_g is unique
    modulo the annihilator B (1 - e_g).  Reconstruction is verified.
    """
    if not x.augmentation().is_zero():
        raise ValueError("element has nonzero augmentation")
    group, f = x.group, x.field
    e = group.identity_index
    out: dict[int, AlgebraElement] = {}
    for s, c in x.coeffs.items():
        if s.g == e:
            continue
        flat = SElement(group, s.members, e)
        b = out.get(s.g)
        term = AlgebraElement(group, f, {flat: c})
        out[s.g] = term if b is None else b + term
    out = {g: b for g, b in out.items() if not b.is_zero()}
    total = AlgebraElement(group, f)
    for g, b in out.items():
        total = total + b * f_element(group.element(g) if group is not INTEGERS else g, f)
    if total != x:
        raise RuntimeError("decomposition failed to reconstruct the element")
    return out


def k_tensor_ig_vanishes(bound: int, field: Field = QQ) -> dict:
    """Check that tensoring the augmentation ideal down to scalars kills it.

    The scalar augmentation of B sends every e_i with i nonzero to 0.
    Since f_i = e_i f_i exactly, each generator's coefficient slot maps
    to the scalar 0, so the induced matrix on generators is zero.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    algebra = PartialGroupAlgebra(INTEGERS, field)
    checked = 0
    all_zero = True
    for i in range(-bound, bound + 1):
        if i == 0:
            continue
        fi = f_element(i, field)
        if algebra.idem(i) * fi != fi:
            all_zero = False
        if _scalar_augmentation(algebra.idem(i)) != field.zero:
            all_zero = False
        checked += 1
    return {"bound": bound, "checked": checked, "all_zero": all_zero,
            "ok": all_zero}


def _scalar_augmentation(b: AlgebraElement) -> Scalar:
    """The map B -> K killing every e_i, i nonzero: (A, 1) -> [A = {1}]."""
    if not b.is_in_b():
        raise ValueError("element is not in the idempotent subalgebra")
    f = b.field
    e = b.group.identity_index
    total = f.zero
    for s, c in b.coeffs.items():
        if s.members == (e,):
            total = f.add(total, c)
    return total


# ---------------------------------------------------------------------------
# Seeded samplers.


def _window_members(rng: Random, group, bound: int) -> tuple[int, ...]:
    if group is INTEGERS:
        pool = [m for m in range(-bound, bound + 1) if m != 0]
    else:
        pool = [i for i in range(group.order) if i != group.identity_index]
    size = rng.randint(0, min(len(pool), 3))
    return tuple(rng.sample(pool, size))


def random_b_element(rng: Random, group=INTEGERS, field: Field = QQ,
                     bound: int = 3, terms: int = 2) -> AlgebraElement:
    """A small random element of the idempotent subalgebra."""
    algebra = PartialGroupAlgebra(group, field)
    out = algebra.zero()
    e = group.identity_index
    for _ in range(rng.randint(0, terms)):
        s = SElement(group, _window_members(rng, group, bound), e)
        out = out + algebra.monomial(s, field.of(rng.randint(-2, 2)))
    return out


def random_b_idempotent(rng: Random, group=INTEGERS, field: Field = QQ,
                        bound: int = 3) -> AlgebraElement:
    """A random idempotent of B: a combination of monomial idempotents."""
    algebra = PartialGroupAlgebra(group, field)
    e = group.identity_index
    monos = [
        algebra.monomial(SElement(group, _window_members(rng, group, bound), e))
        for _ in range(rng.randint(1, 2))
    ]
    return combine_idempotents(monos)


def random_cancellation_instance(
    rng: Random, k: int, group=INTEGERS, field: Field = QQ, bound: int = 3
) -> tuple[list[AlgebraElement], list[AlgebraElement]]:
    """A seeded instance of the cancellation hypothesis sum r_i e_i = 0.

    The r_i are sampled from the full solution space: a skew pattern of
    B-coefficients against the other idempotents plus an arbitrary
    multiple of (1 - e_i), which is everything by the decomposition
    theorem itself.
    """
    algebra = PartialGroupAlgebra(group, field)
    one = algebra.one()
    es = [random_b_idempotent(rng, group, field, bound) for _ in range(k)]
    cross = {
        (i, j): random_b_element(rng, group, field, bound)
        for i in range(k)
        for j in range(i + 1, k)
    }
    rs = []
    for i in range(k):
        r = random_b_element(rng, group, field, bound) * (one - es[i])
        for j in range(k):
            if j > i:
                r = r + cross[(i, j)] * es[j]
            elif j < i:
                r = r - cross[(j, i)] * es[j]
        rs.append(r)
    total = algebra.zero()
    for r, e in zip(rs, es):
        total = total + r * e
    if not total.is_zero():
        raise RuntimeError("sampler produced a non-solution")
    return es, rs


def random_ig_element(rng: Random, bound: int = 3, field: Field = QQ,
                      terms: int = 4) -> AlgebraElement:
    """A seeded window element of the augmentation ideal."""
    algebra = PartialGroupAlgebra(INTEGERS, field)
    x = algebra.zero()
    for _ in range(rng.randint(1, terms)):
        members = set(_window_members(rng, INTEGERS, bound)) | {0}
        g = rng.choice(sorted(members))
        s = SElement(INTEGERS, members, g)
        x = x + algebra.monomial(s, field.of(rng.randint(-2, 2)))
    return x - x.augmentation()
