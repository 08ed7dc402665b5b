"""The subset semigroup of a group and its partial group algebra.

For a group G, the monoid S(G) generated by symbols [g] subject to the
partial-translation relations has a canonical form: a pair (A, g) where A
is a finite subset of G containing 1 and g.  Multiplication, involution,
and the idempotent lattice are all explicit on canonical forms, and the
linearization K S(G) is the partial group algebra once [1] is identified
with the unit, which the canonical form already does.

Two independent models are kept side by side:

* canonical pairs (A, g) with the direct product rule, used everywhere;
* a crossed-product model (:class:`SkewElement`) whose product is computed
  from the idempotent-twisting rule, used as an oracle to validate the
  canonical rule and never used by the main code paths.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .groups import GroupElement, GroupError
from .linalg import Column, Field, QQ, Scalar


def _gidx(group, g) -> int:
    """Coerce a GroupElement, index, or name to an element index."""
    if isinstance(g, GroupElement):
        if g.group is not group:
            raise GroupError("element from a different group")
        return g.index
    if isinstance(g, str):
        return group.element(g).index
    return group.element(int(g)).index


class SElement:
    """A canonical pair (A, g): A a finite subset of G with 1, g in A.

    The constructor canonicalizes by adjoining 1 and g to the member set,
    so every reachable value satisfies the invariant.
    """

    __slots__ = ("group", "members", "g")

    def __init__(self, group, members: Iterable[int], g: int) -> None:
        e = group.identity_index
        self.group = group
        self.g = g
        self.members = tuple(sorted(set(members) | {e, g}))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SElement)
            and self.group is other.group
            and self.members == other.members
            and self.g == other.g
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.members, self.g))

    def sort_key(self):
        return (len(self.members), self.members, self.g)

    def is_idempotent(self) -> bool:
        return self.g == self.group.identity_index

    def star(self) -> "SElement":
        gi = self.group.inv(self.g)
        return SElement(self.group, (self.group.mult(gi, m) for m in self.members), gi)

    def render(self) -> str:
        e = self.group.identity_index
        name = self.group.element_name
        parts = [f"e{{{name(m)}}}" for m in self.members if m not in (e, self.g)]
        if self.g != e:
            parts.append(f"[{name(self.g)}]")
        return "".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return self.render()


def s_mul(x: SElement, y: SElement) -> SElement:
    """Product of canonical pairs: (A, g)(B, h) = (A union gB, gh)."""
    if x.group is not y.group:
        raise GroupError("elements of different groups")
    grp = x.group
    members = set(x.members)
    members.update(grp.mult(x.g, b) for b in y.members)
    return SElement(grp, members, grp.mult(x.g, y.g))


def s_inv(x: SElement) -> SElement:
    """The involution (A, g) -> (g^-1 A, g^-1); x * x.star() * x == x."""
    return x.star()


def s_generator(group, g) -> SElement:
    """The generator [g] as the canonical pair ({1, g}, g)."""
    return SElement(group, (), _gidx(group, g))


class SkewElement:
    """A twisted-product monomial e_S # g; the validation model.

    ``factors`` is the index set S of idempotent factors; no canonical
    closure is applied beyond what the product rule itself produces.
    """

    __slots__ = ("group", "factors", "g")

    def __init__(self, group, factors: Iterable[int], g: int) -> None:
        self.group = group
        self.factors = frozenset(factors)
        self.g = g

    def canonical_pair(self) -> tuple[tuple[int, ...], int]:
        """The (A, g) this monomial equals, closing under {1, g}."""
        e = self.group.identity_index
        return (tuple(sorted(self.factors | {e, self.g})), self.g)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SkewElement)
            and self.group is other.group
            and self.canonical_pair() == other.canonical_pair()
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.canonical_pair()))

    def __repr__(self) -> str:
        name = self.group.element_name
        facs = "".join(f"e{{{name(t)}}}" for t in sorted(self.factors))
        return f"{facs}#{name(self.g)}"


def skew_generator(group, g) -> SkewElement:
    """[g] in the twisted model: the g-indexed unit times the g-shift."""
    gi = _gidx(group, g)
    return SkewElement(group, {gi}, gi)


def skew_mul(x: SkewElement, y: SkewElement) -> SkewElement:
    """Twisted product (e_S # g)(e_T # h).

    The right coefficient is cut down to the domain of the g-translation,
    translated, and multiplied out:
    e_S * tau_g(e_T * e_h * e_{g^-1}) = e_{S + gT + {gh, 1, g}}.
    """
    if x.group is not y.group:
        raise GroupError("elements of different groups")
    grp = x.group
    g, h = x.g, y.g
    cut = set(y.factors) | {h, grp.inv(g)}
    translated = {grp.mult(g, t) for t in cut} | {g}
    return SkewElement(grp, set(x.factors) | translated, grp.mult(g, h))


def skew_star(x: SkewElement) -> SkewElement:
    """Involution in the twisted model: translate factors by g^-1."""
    grp = x.group
    gi = grp.inv(x.g)
    factors = {grp.mult(gi, t) for t in x.factors} | {gi}
    return SkewElement(grp, factors, gi)


class AlgebraElement:
    """A finite K-linear combination of canonical pairs.

    Supports +, -, scalar and algebra multiplication, the star involution,
    and the augmentation onto the idempotent subalgebra B.
    """

    __slots__ = ("group", "field", "coeffs")

    def __init__(self, group, field: Field, coeffs: dict[SElement, Scalar] | None = None) -> None:
        self.group = group
        self.field = field
        self.coeffs: dict[SElement, Scalar] = {}
        if coeffs:
            for s, c in coeffs.items():
                c = field.of(c)
                if c:
                    self.coeffs[s] = c

    def _check(self, other: "AlgebraElement") -> None:
        if self.group is not other.group or self.field != other.field:
            raise ValueError("elements of different partial group algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        f = self.field
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            v = f.add(out.get(s, f.zero), c)
            if v:
                out[s] = v
            else:
                out.pop(s, None)
        return AlgebraElement(self.group, f, out)

    def __neg__(self) -> "AlgebraElement":
        f = self.field
        return AlgebraElement(self.group, f, {s: f.neg(c) for s, c in self.coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        f = self.field
        c = f.of(c)
        return AlgebraElement(self.group, f, {s: f.mul(c, v) for s, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            f = self.field
            out: dict[SElement, Scalar] = {}
            for s, c in self.coeffs.items():
                for t, d in other.coeffs.items():
                    st = s_mul(s, t)
                    v = f.add(out.get(st, f.zero), f.mul(c, d))
                    if v:
                        out[st] = v
                    else:
                        out.pop(st, None)
            return AlgebraElement(self.group, f, out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def star(self) -> "AlgebraElement":
        return AlgebraElement(
            self.group, self.field, {s.star(): c for s, c in self.coeffs.items()}
        )

    def augmentation(self) -> "AlgebraElement":
        """Project onto B by flattening each (A, g) to (A, 1)."""
        f = self.field
        e = self.group.identity_index
        out: dict[SElement, Scalar] = {}
        for s, c in self.coeffs.items():
            t = SElement(self.group, s.members, e)
            v = f.add(out.get(t, f.zero), c)
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return AlgebraElement(self.group, f, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_in_b(self) -> bool:
        return all(s.is_idempotent() for s in self.coeffs)

    def support(self) -> list[SElement]:
        return sorted(self.coeffs, key=SElement.sort_key)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.group is other.group
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.field, frozenset(self.coeffs.items())))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        parts: list[str] = []
        for s in self.support():
            c = self.coeffs[s]
            body = s.render()
            negative = f.char == 0 and c < 0
            mag = -c if negative else c
            if body == "1":
                text = str(mag)
            elif mag == f.one:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(("-" if negative else "") + text)
            else:
                parts.append(("- " if negative else "+ ") + text)
        return " ".join(parts)

    def __repr__(self) -> str:
        return self.render()


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<idem>e\{(?P<iname>[^}]*)\})"
    r"|(?P<brk>\[(?P<bname>[^\]]*)\])|(?P<one>1)|(?P<op>[+\-*]))"
)


class PartialGroupAlgebra:
    """The partial group algebra of a group over an exact field.

    Provides the generators, the canonical and primitive-idempotent bases
    (finite groups only), coordinate conversion between them, the
    conjugation actions on B, and a parser for the rendered text form.
    """

    def __init__(self, group, field: Field = QQ) -> None:
        self.group = group
        self.field = field
        self._canonical: list[SElement] | None = None
        self._primitive: list[tuple[int, ...]] | None = None

    # --- constructors -------------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self.group, self.field)

    def one(self) -> AlgebraElement:
        s = SElement(self.group, (), self.group.identity_index)
        return AlgebraElement(self.group, self.field, {s: self.field.one})

    def monomial(self, s: SElement, c=1) -> AlgebraElement:
        return AlgebraElement(self.group, self.field, {s: self.field.of(c)})

    def bracket(self, g) -> AlgebraElement:
        """The generator [g]."""
        return self.monomial(s_generator(self.group, g))

    def idem(self, g) -> AlgebraElement:
        """The idempotent e_g = [g][g^-1]."""
        gi = _gidx(self.group, g)
        return self.monomial(SElement(self.group, (gi,), self.group.identity_index))

    def idem_set(self, members: Iterable) -> AlgebraElement:
        """The product of e_t over a set of elements, as one pair (A, 1)."""
        idx = [_gidx(self.group, m) for m in members]
        return self.monomial(SElement(self.group, idx, self.group.identity_index))

    def element(self, terms: dict) -> AlgebraElement:
        return AlgebraElement(self.group, self.field, terms)

    # --- words ----------------------------------------------------------

    def evaluate_word(self, word: Sequence) -> AlgebraElement:
        """The product [g_1][g_2]...[g_n] as a single canonical pair.

        The result is ({1, p_1, ..., p_n}, p_n) where p_i are the prefix
        products; the empty word gives the unit.
        """
        s = SElement(self.group, (), self.group.identity_index)
        for g in word:
            s = s_mul(s, s_generator(self.group, g))
        return self.monomial(s)

    def evaluate_word_skew(self, word: Sequence) -> SkewElement:
        """The same word folded in the twisted model; oracle only."""
        x = SkewElement(self.group, (), self.group.identity_index)
        for g in word:
            x = skew_mul(x, skew_generator(self.group, g))
        return x

    # --- bases (finite groups) -----------------------------------------

    def _require_finite(self) -> None:
        if not self.group.is_finite:
            raise GroupError("operation requires a finite group")

    def subsets_with_identity(self) -> list[tuple[int, ...]]:
        """All subsets of G containing 1, as sorted index tuples, lex order."""
        self._require_finite()
        if self._primitive is None:
            n = self.group.order
            rest = [i for i in range(n) if i != 0]
            subsets = []
            for k in range(len(rest) + 1):
                for extra in combinations(rest, k):
                    subsets.append(tuple(sorted((0,) + extra)))
            self._primitive = sorted(subsets)
        return self._primitive

    def canonical_basis(self) -> list[SElement]:
        """All pairs (A, g), ordered by A lex then g ascending."""
        self._require_finite()
        if self._canonical is None:
            out = []
            for a in self.subsets_with_identity():
                for g in a:
                    out.append(SElement(self.group, a, g))
            self._canonical = out
        return self._canonical

    def dimension(self) -> int:
        """dim K_par G = (|G| + 1) * 2^(|G| - 2) for |G| >= 2, else 1."""
        self._require_finite()
        n = self.group.order
        if n == 1:
            return 1
        return (n + 1) * 2 ** (n - 2)

    # --- primitive idempotent coordinates on B ---------------------------

    def primitive_vector(self, x: AlgebraElement) -> Column:
        """Coordinates of x in B over the primitive idempotents e_A.

        Uses (C, 1) = sum of e_A over A containing C.  Raises if x is not
        in B.
        """
        self._require_finite()
        if not x.is_in_b():
            raise ValueError("element is not in the idempotent subalgebra B")
        f = self.field
        subsets = self.subsets_with_identity()
        pos = {a: k for k, a in enumerate(subsets)}
        out: Column = {}
        for s, c in x.coeffs.items():
            need = set(s.members)
            for a in subsets:
                if need.issubset(a):
                    k = pos[a]
                    v = f.add(out.get(k, f.zero), c)
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def to_primitive(self, x: AlgebraElement) -> dict[tuple[int, ...], Scalar]:
        subsets = self.subsets_with_identity()
        return {subsets[k]: v for k, v in self.primitive_vector(x).items()}

    def from_primitive(self, coeffs: dict[tuple[int, ...], Scalar]) -> AlgebraElement:
        """Rebuild sum c_A e_A as canonical pairs by inclusion-exclusion.

        e_A = sum over T outside A of (-1)^|T| (A union T, 1).
        """
        self._require_finite()
        f = self.field
        n = self.group.order
        e = self.group.identity_index
        out = self.zero()
        for a, c in coeffs.items():
            comp = [i for i in range(n) if i not in a]
            terms: dict[SElement, Scalar] = {}
            for k in range(len(comp) + 1):
                sign = f.of(1 if k % 2 == 0 else -1)
                for t in combinations(comp, k):
                    s = SElement(self.group, set(a) | set(t), e)
                    terms[s] = f.add(terms.get(s, f.zero), sign)
            out = out + AlgebraElement(self.group, f, terms).scale(c)
        return out

    def primitive_idempotent(self, a: Iterable[int]) -> AlgebraElement:
        return self.from_primitive({tuple(sorted(set(a) | {0})): self.field.one})

    # --- conjugation actions on B ----------------------------------------

    def left_action_on_B(self, g, b: AlgebraElement) -> AlgebraElement:
        """[g] b [g^-1], computed as the honest triple product."""
        if not b.is_in_b():
            raise ValueError("left action is defined on B only")
        gi = _gidx(self.group, g)
        lo = self.bracket(gi)
        hi = self.bracket(self.group.inv(gi))
        return lo * b * hi

    def right_action_on_B(self, g, b: AlgebraElement) -> AlgebraElement:
        """[g^-1] b [g], the right-translation companion of the above."""
        if not b.is_in_b():
            raise ValueError("right action is defined on B only")
        gi = _gidx(self.group, g)
        lo = self.bracket(self.group.inv(gi))
        hi = self.bracket(gi)
        return lo * b * hi

    # --- parsing ----------------------------------------------------------

    def parse(self, text: str) -> AlgebraElement:
        """Parse the rendered form: terms like ``2*e{a}e{b}[ab] - 1/2*[a] + 1``."""
        f = self.field
        total = self.zero()
        sign = f.one
        coeff = None
        factor = None
        pos = 0

        def flush():
            nonlocal total, sign, coeff, factor
            if coeff is None and factor is None:
                raise ValueError(f"empty term in {text!r}")
            c = coeff if coeff is not None else f.one
            x = factor if factor is not None else self.one()
            total = total + x.scale(f.mul(sign, c))
            coeff = None
            factor = None

        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at position {pos}")
            pos = m.end()
            if m.group("num"):
                c = f.of(Fraction(m.group("num")))
                coeff = c if coeff is None else f.mul(coeff, c)
            elif m.group("idem"):
                x = self.idem(self._name_to_index(m.group("iname")))
                factor = x if factor is None else factor * x
            elif m.group("brk"):
                x = self.bracket(self._name_to_index(m.group("bname")))
                factor = x if factor is None else factor * x
            elif m.group("one"):
                x = self.one()
                factor = x if factor is None else factor * x
            elif m.group("op"):
                op = m.group("op")
                if op == "*":
                    continue
                if coeff is None and factor is None:
                    # leading sign of the first term (or a doubled sign)
                    if op == "-":
                        sign = f.neg(sign)
                    continue
                flush()
                sign = f.one if op == "+" else f.neg(f.one)
        flush()
        return total

    def _name_to_index(self, name: str) -> int:
        name = name.strip()
        if not self.group.is_finite:
            try:
                return int(name)
            except ValueError:
                raise ValueError(f"bad integer element {name!r}") from None
        return self.group.element(name).index
