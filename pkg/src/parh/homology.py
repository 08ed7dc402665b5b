"""Exact homology for partial representations of finite groups.

Four chain pipelines feed the checks in this module:

- a homogeneous resolution over the idempotent subalgebra, together with
  the contracting homotopy that certifies its exactness degree by degree;
- the combinatorial bar complex with idempotent coefficients, built
  directly in the primitive basis with partial-permutation entries;
- a transported complex that evaluates the same resolution against any
  finite-dimensional module of generator matrices, using the involution
  that exchanges left and right module structures;
- the classical bar complex of a finite group, written independently so
  that the comparison checks are carried by genuinely separate code.

Dimensions are exact in every degree: ranks over the rationals or a
prime field, never floating point.
"""

from __future__ import annotations

from itertools import product

from .exel import PartialGroupAlgebra
from .groupoid import (
    PartialRepModule,
    b_module,
    build_groupoid,
    components,
    induce_module,
)
from .groups import trivial_rep
from .linalg import Eliminator, Field, QQ, SizeCapError, SparseMatrix, rank

HOMOLOGY_SIZE_CAP = 100_000


class HomologyReport:
    """Per-degree dimensions of one homology computation.

    ``method`` records which pipeline produced the numbers: ``bar`` for
    the idempotent-coefficient machinery, ``ordinary`` for the classical
    group complex, ``stabilizer-sum`` for a sum over components.
    ``checks`` carries the structural verifications that ran alongside
    the computation (``homotopy_id`` is None for pipelines that have no
    resolution identity to check).
    """

    __slots__ = ("group", "module", "field", "method", "dims", "checks")

    def __init__(self, group: str, module: str, field: Field, method: str,
                 dims: list[int], checks: dict) -> None:
        if any(d < 0 for d in dims):
            raise ValueError("homology dimensions must be nonnegative")
        self.group = group
        self.module = module
        self.field = field
        self.method = method
        self.dims = list(dims)
        self.checks = dict(checks)

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "module": self.module,
            "field": self.field.name,
            "method": self.method,
            "dims": self.dims,
            "checks": self.checks,
        }

    def __repr__(self) -> str:
        return f"HomologyReport({self.group}, {self.module}, dims={self.dims})"


class ChainComplex:
    """Labeled chain spaces with one sparse differential per degree.

    ``labels[n]`` names the basis of the degree-n space; ``diffs[n]`` is
    the matrix of d_n mapping degree n to degree n-1.  Consecutive
    differentials compose to zero; ``d2_zero`` verifies that by honest
    matrix multiplication.
    """

    __slots__ = ("field", "labels", "diffs")

    def __init__(self, field: Field, labels: dict[int, list],
                 diffs: dict[int, SparseMatrix]) -> None:
        for n, d in diffs.items():
            if d.ncols != len(labels[n]) or d.nrows != len(labels[n - 1]):
                raise ValueError(f"differential at degree {n} has wrong shape")
        self.field = field
        self.labels = labels
        self.diffs = diffs

    def dim(self, n: int) -> int:
        return len(self.labels[n])

    def d2_zero(self) -> bool:
        for n, d in self.diffs.items():
            up = self.diffs.get(n + 1)
            if up is not None and not (d * up).is_zero():
                return False
        return True

    def homology_dims(self, max_degree: int) -> list[int]:
        """dim ker d_n - rank d_{n+1} for n = 0..max_degree."""
        if max_degree + 1 not in self.diffs and max_degree > 0:
            raise ValueError("complex not built deep enough for max_degree")
        ranks = {}
        for n in range(1, max_degree + 2):
            d = self.diffs.get(n)
            ranks[n] = rank(d) if d is not None else 0
        out = []
        for n in range(max_degree + 1):
            out.append(self.dim(n) - ranks.get(n, 0) - ranks.get(n + 1, 0))
        return out


def _check_cap(group, n: int, block: int, cap: int, what: str) -> None:
    requested = (group.order ** n) * block
    if requested > cap:
        raise SizeCapError(
            f"{what} at degree {n} needs {requested} basis columns, cap is {cap}",
            limit=cap,
            requested=requested,
        )


def _prefixes(group, xs: tuple[int, ...]) -> list[int]:
    out = []
    acc = 0
    for x in xs:
        acc = group.mult(acc, x)
        out.append(acc)
    return out


def _contract(group, xs: tuple[int, ...], j: int) -> tuple[int, ...]:
    return xs[:j] + (group.mult(xs[j], xs[j + 1]),) + xs[j + 2:]


def _subsets(group) -> list[tuple[int, ...]]:
    return PartialGroupAlgebra(group).subsets_with_identity()


# ---------------------------------------------------------------------------
# Bar complex with idempotent coefficients, directly in the primitive basis.


def bar_basis(group, n: int, cap: int = HOMOLOGY_SIZE_CAP) -> list[tuple]:
    """Degree-n basis labels (A, (x_1, ..., x_n)).

    A ranges over the primitive idempotent indices that contain the
    identity and every prefix product x_1, x_1 x_2, ...; degree 0 is the
    idempotent subalgebra itself, one label (A, ()) per subset.
    """
    subsets = _subsets(group)
    _check_cap(group, n, len(subsets), cap, "bar basis")
    out = []
    for xs in product(range(group.order), repeat=n):
        need = set(_prefixes(group, xs))
        need.add(0)
        for a in subsets:
            if need.issubset(a):
                out.append((a, xs))
    return out


def bar_differential(group, n: int, field: Field = QQ,
                     cap: int = HOMOLOGY_SIZE_CAP) -> SparseMatrix:
    """Matrix of the degree-n bar differential in the primitive basis.

    The column of (A, (x_1, ..., x_n)) has the three kinds of terms: the
    translated tail (x_1^{-1} A, (x_2, ..., x_n)), the alternating-sign
    contractions (A, (..., x_i x_{i+1}, ...)), and the sign (-1)^n drop
    of the last entry.  Every entry is +-1 up to collisions, and the
    composite of consecutive differentials is zero.
    """
    if n < 1:
        raise ValueError("bar differential starts at degree 1")
    rows = bar_basis(group, n - 1, cap)
    cols = bar_basis(group, n, cap)
    rpos = {lab: k for k, lab in enumerate(rows)}
    f = field
    entries: dict[tuple[int, int], object] = {}

    def bump(r: int, c: int, v) -> None:
        s = f.add(entries.get((r, c), f.zero), v)
        if s:
            entries[(r, c)] = s
        else:
            entries.pop((r, c), None)

    for c, (a, xs) in enumerate(cols):
        x1i = group.inv(xs[0])
        tail_a = tuple(sorted(group.mult(x1i, m) for m in a))
        bump(rpos[(tail_a, xs[1:])], c, f.one)
        sign = f.neg(f.one)
        for j in range(len(xs) - 1):
            bump(rpos[(a, _contract(group, xs, j))], c, sign)
            sign = f.neg(sign)
        bump(rpos[(a, xs[:-1])], c, sign)
    return SparseMatrix(f, len(rows), len(cols), entries,
                        row_labels=rows, col_labels=cols)


# ---------------------------------------------------------------------------
# Homogeneous resolution and its contracting homotopy.


def homogeneous_basis(group, n: int, cap: int = HOMOLOGY_SIZE_CAP) -> list[tuple]:
    """Degree-n labels (A, (g_1, ..., g_n)) with A containing every g_i."""
    subsets = _subsets(group)
    _check_cap(group, n, len(subsets), cap, "homogeneous basis")
    out = []
    for gs in product(range(group.order), repeat=n):
        need = set(gs)
        need.add(0)
        for a in subsets:
            if need.issubset(a):
                out.append((a, gs))
    return out


def homogeneous_differential(group, n: int, field: Field = QQ,
                             cap: int = HOMOLOGY_SIZE_CAP) -> SparseMatrix:
    """Alternating sum of entry drops; the subset label never moves."""
    if n < 1:
        raise ValueError("homogeneous differential starts at degree 1")
    rows = homogeneous_basis(group, n - 1, cap)
    cols = homogeneous_basis(group, n, cap)
    rpos = {lab: k for k, lab in enumerate(rows)}
    f = field
    entries: dict[tuple[int, int], object] = {}
    for c, (a, gs) in enumerate(cols):
        sign = f.one
        for i in range(len(gs)):
            r = rpos[(a, gs[:i] + gs[i + 1:])]
            s = f.add(entries.get((r, c), f.zero), sign)
            if s:
                entries[(r, c)] = s
            else:
                entries.pop((r, c), None)
            sign = f.neg(sign)
    return SparseMatrix(f, len(rows), len(cols), entries,
                        row_labels=rows, col_labels=cols)


def contracting_homotopy(group, n: int, field: Field = QQ,
                         cap: int = HOMOLOGY_SIZE_CAP) -> SparseMatrix:
    """Matrix of the degree-raising map prepending the identity entry.

    Together with the homogeneous differentials it satisfies
    s d + d s = id in every positive degree, and d_1 s_0 = id in degree
    zero, which is the degreewise exactness certificate.
    """
    rows = homogeneous_basis(group, n + 1, cap)
    cols = homogeneous_basis(group, n, cap)
    rpos = {lab: k for k, lab in enumerate(rows)}
    entries = {}
    for c, (a, gs) in enumerate(cols):
        entries[(rpos[(a, (0,) + gs)], c)] = field.one
    return SparseMatrix(field, len(rows), len(cols), entries,
                        row_labels=rows, col_labels=cols)


def resolution_identity_holds(group, max_degree: int, field: Field = QQ,
                              cap: int = HOMOLOGY_SIZE_CAP) -> bool:
    """Check s d + d s = id through the requested degree.

    Degree zero uses d_1 s_0 = id; degree m uses
    s_{m-1} d_m + d_{m+1} s_m = id.  Everything is verified by sparse
    matrix arithmetic, no shortcuts.
    """
    diffs = {m: homogeneous_differential(group, m, field, cap)
             for m in range(1, max_degree + 2)}
    homs = {m: contracting_homotopy(group, m, field, cap)
            for m in range(0, max_degree + 1)}
    n0 = len(homogeneous_basis(group, 0, cap))
    if diffs[1] * homs[0] != SparseMatrix.identity(field, n0):
        return False
    for m in range(1, max_degree + 1):
        dim_m = diffs[m].ncols
        composite = homs[m - 1] * diffs[m] + diffs[m + 1] * homs[m]
        if composite != SparseMatrix.identity(field, dim_m):
            return False
    return True


# ---------------------------------------------------------------------------
# Transport of the resolution against a module of generator matrices.


class _Block:
    """Image of one product of idempotent projections, with coordinates.

    ``basis`` holds the chosen independent columns of the projection;
    ``coords`` rewrites any vector of the image over that basis and
    refuses vectors that escape it.
    """

    __slots__ = ("projection", "basis", "_elim")

    def __init__(self, field: Field, projection: SparseMatrix) -> None:
        self.projection = projection
        self._elim = Eliminator(field, track=True)
        self.basis: list[dict] = []
        for j in range(projection.ncols):
            col = projection.column(j)
            if not col:
                continue
            if self._elim.add(col, tag=len(self.basis)) is not None:
                self.basis.append(col)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, col: dict) -> dict:
        hist: dict = {}
        residue = self._elim.reduce(dict(col), hist)
        if residue:
            raise RuntimeError("vector escapes its projection block")
        return hist


def _block_for(v_mod: PartialRepModule, prefix_set: frozenset[int],
               cache: dict) -> _Block:
    block = cache.get(prefix_set)
    if block is None:
        proj = SparseMatrix.identity(v_mod.field, v_mod.dim)
        for p in sorted(prefix_set):
            if p == 0:
                continue
            proj = proj * (v_mod.mats[p] * v_mod.mats[v_mod.group.inv(p)])
        block = _Block(v_mod.field, proj)
        cache[prefix_set] = block
    return block


def _degree_blocks(v_mod: PartialRepModule, n: int, cache: dict):
    """Per-tuple blocks, offsets, and labels for one chain degree."""
    group = v_mod.group
    per_tuple = []
    offsets = {}
    labels = []
    total = 0
    for xs in product(range(group.order), repeat=n):
        block = _block_for(v_mod, frozenset(_prefixes(group, xs)), cache)
        per_tuple.append((xs, block))
        offsets[xs] = total
        labels.extend((xs, j) for j in range(block.dim))
        total += block.dim
    return per_tuple, offsets, labels


def _transported_complex(v_mod: PartialRepModule, max_n: int,
                         cap: int) -> ChainComplex:
    """Chain complex of blocks e_{(x)} V with the transported boundary.

    The boundary of a block vector v at the tuple (x_1, ..., x_n) is the
    coordinate image of [x_1^{-1}] v at the tail tuple, plus the
    alternating contractions and the final drop of v itself.  Coordinate
    lookups fail loudly if a vector ever leaves its target block.
    """
    group = v_mod.group
    field = v_mod.field
    for n in range(max_n + 1):
        _check_cap(group, n, v_mod.dim, cap, "transported complex")
    cache: dict = {}
    degree = {n: _degree_blocks(v_mod, n, cache) for n in range(max_n + 1)}
    labels = {n: degree[n][2] for n in range(max_n + 1)}
    diffs = {}
    for n in range(1, max_n + 1):
        per_tuple, _, _ = degree[n]
        _, off_lo, _ = degree[n - 1]
        lo_blocks = {xs: b for xs, b in degree[n - 1][0]}
        entries: dict[tuple[int, int], object] = {}

        def bump(r: int, c: int, v) -> None:
            s = field.add(entries.get((r, c), field.zero), v)
            if s:
                entries[(r, c)] = s
            else:
                entries.pop((r, c), None)

        col_off = 0
        for xs, block in per_tuple:
            x1i = group.inv(xs[0])
            tail = xs[1:]
            targets = [(tail, field.one, v_mod.mats[x1i])]
            sign = field.neg(field.one)
            for j in range(n - 1):
                targets.append((_contract(group, xs, j), sign, None))
                sign = field.neg(sign)
            targets.append((xs[:-1], sign, None))
            for i, b in enumerate(block.basis):
                c = col_off + i
                for ys, s, mat in targets:
                    w = mat.apply(b) if mat is not None else b
                    for tag, v in lo_blocks[ys].coords(w).items():
                        bump(off_lo[ys] + tag, c, field.mul(s, v))
            col_off += block.dim
        diffs[n] = SparseMatrix(field, len(labels[n - 1]), col_off, entries,
                                row_labels=labels[n - 1],
                                col_labels=labels[n])
    return ChainComplex(field, labels, diffs)


def _transported_cocomplex(v_mod: PartialRepModule, max_n: int,
                           cap: int) -> ChainComplex:
    """Same blocks, with the coboundary raising degree by one.

    Stored with the indexing shifted so that ``diffs[n]`` maps degree
    n - 1 to degree n spaces turned around: ``diffs[n]`` has the degree-n
    space as rows.  ``homology_dims`` then reports cohomology.
    """
    group = v_mod.group
    field = v_mod.field
    for n in range(max_n + 1):
        _check_cap(group, n, v_mod.dim, cap, "transported cocomplex")
    cache: dict = {}
    degree = {n: _degree_blocks(v_mod, n, cache) for n in range(max_n + 1)}
    labels = {n: degree[n][2] for n in range(max_n + 1)}
    diffs = {}
    for n in range(1, max_n + 1):
        per_tuple, off_hi, _ = degree[n]
        _, off_lo, _ = degree[n - 1]
        lo_blocks = {xs: b for xs, b in degree[n - 1][0]}
        entries: dict[tuple[int, int], object] = {}

        def bump(r: int, c: int, v) -> None:
            s = field.add(entries.get((r, c), field.zero), v)
            if s:
                entries[(r, c)] = s
            else:
                entries.pop((r, c), None)

        for xs, block in per_tuple:
            x1 = xs[0]
            tail = xs[1:]
            terms = [(tail, field.one, v_mod.mats[x1], False)]
            sign = field.neg(field.one)
            for j in range(n - 1):
                terms.append((_contract(group, xs, j), sign, None, True))
                sign = field.neg(sign)
            terms.append((xs[:-1], sign, None, True))
            for ys, s, mat, needs_proj in terms:
                src = lo_blocks[ys]
                for j, b in enumerate(src.basis):
                    w = mat.apply(b) if mat is not None else b
                    if needs_proj:
                        w = block.projection.apply(w)
                        if not w:
                            continue
                    for tag, v in block.coords(w).items():
                        bump(off_hi[xs] + tag, off_lo[ys] + j,
                             field.mul(s, v))
        diffs[n] = SparseMatrix(field, len(labels[n]), len(labels[n - 1]),
                                entries, row_labels=labels[n],
                                col_labels=labels[n - 1])
    return _CoComplex(field, {n: labels[n] for n in range(max_n + 1)}, diffs)


class _CoComplex(ChainComplex):
    """Cochain data reusing the chain-complex rank bookkeeping.

    ``diffs[n]`` maps the degree n-1 space to the degree n space, so
    d2_zero checks d_{n+1} d_n = 0 and ``homology_dims`` computes
    dim ker d_{n+1} - rank d_n in each degree.
    """

    def __init__(self, field: Field, labels: dict[int, list],
                 diffs: dict[int, SparseMatrix]) -> None:
        for n, d in diffs.items():
            if d.nrows != len(labels[n]) or d.ncols != len(labels[n - 1]):
                raise ValueError(f"coboundary at degree {n} has wrong shape")
        self.field = field
        self.labels = labels
        self.diffs = diffs

    def d2_zero(self) -> bool:
        for n, d in self.diffs.items():
            up = self.diffs.get(n + 1)
            if up is not None and not (up * d).is_zero():
                return False
        return True

    def homology_dims(self, max_degree: int) -> list[int]:
        if max_degree + 1 not in self.diffs and max_degree > 0:
            raise ValueError("cocomplex not built deep enough for max_degree")
        ranks = {}
        for n in range(1, max_degree + 2):
            d = self.diffs.get(n)
            ranks[n] = rank(d) if d is not None else 0
        out = []
        for n in range(max_degree + 1):
            out.append(self.dim(n) - ranks.get(n + 1, 0) - ranks.get(n, 0))
        return out


def _check_module(group, v_mod: PartialRepModule, field: Field | None) -> Field:
    if v_mod.group is not group:
        raise ValueError("module is over a different group")
    if v_mod.side != "left":
        raise ValueError("homology and cohomology take left modules")
    if field is not None and field != v_mod.field:
        raise ValueError("requested field differs from the module field")
    return v_mod.field


def _module_desc(v_mod: PartialRepModule) -> str:
    return f"left module of dimension {v_mod.dim}"


def partial_homology(group, v_mod: PartialRepModule, field: Field | None = None,
                     max_degree: int = 3, cap: int = HOMOLOGY_SIZE_CAP,
                     module_name: str | None = None) -> HomologyReport:
    """Per-degree homology of a left module against the bar machinery.

    Degree n is computed as dim ker d_n - rank d_{n+1} on the transported
    complex of blocks e_{(x)} V; degree 0 equals the dimension of the
    idempotent subalgebra tensored with the module (see b_tensor_dim for
    the independent route).  The report's checks record that consecutive
    differentials compose to zero and that the underlying resolution
    passes its contracting-homotopy identity over the same field.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    f = _check_module(group, v_mod, field)
    cx = _transported_complex(v_mod, max_degree + 1, cap)
    dims = cx.homology_dims(max_degree)
    checks = {
        "d2_zero": cx.d2_zero(),
        "homotopy_id": resolution_identity_holds(group, max_degree, f, cap),
    }
    return HomologyReport(group.name, module_name or _module_desc(v_mod), f,
                          "bar", dims, checks)


def partial_cohomology(group, v_mod: PartialRepModule, field: Field | None = None,
                       max_degree: int = 3, cap: int = HOMOLOGY_SIZE_CAP,
                       module_name: str | None = None) -> HomologyReport:
    """Per-degree cohomology of a left module, same machinery upside down.

    Cochains in degree n are the blocks e_{(x)} V; the coboundary
    precomposes with the bar differential, so the degree-0 space is the
    common kernel of the maps v -> [x] v - e_x v.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    f = _check_module(group, v_mod, field)
    cx = _transported_cocomplex(v_mod, max_degree + 1, cap)
    dims = cx.homology_dims(max_degree)
    checks = {
        "d2_zero": cx.d2_zero(),
        "homotopy_id": resolution_identity_holds(group, max_degree, f, cap),
    }
    return HomologyReport(group.name, module_name or _module_desc(v_mod), f,
                          "bar", dims, checks)


def b_tensor_dim(v_mod: PartialRepModule) -> int:
    """Dimension of the idempotent subalgebra tensored with the module.

    Computed by the relation-cokernel route: span the vectors
    (e_A acted on the right by a canonical pair) tensor v  minus
    e_A tensor (the pair acting on v), inside the span of all e_A tensor
    v, and subtract the rank.  This is the degree-0 oracle for
    partial_homology and shares none of its chain machinery.
    """
    group = v_mod.group
    field = _check_module(group, v_mod, None)
    algebra = PartialGroupAlgebra(group, field)
    subsets = algebra.subsets_with_identity()
    pos = {a: k for k, a in enumerate(subsets)}
    d = v_mod.dim
    elim = Eliminator(field)
    for s in algebra.canonical_basis():
        act = v_mod.act_pair(s)
        members = set(s.members)
        gi = group.inv(s.g)
        for k, a in enumerate(subsets):
            shifted = None
            if members.issubset(a):
                shifted = pos[tuple(sorted(group.mult(gi, m) for m in a))]
            for j in range(d):
                col: dict[int, object] = {}
                if shifted is not None:
                    col[shifted * d + j] = field.one
                for r, v in act.column(j).items():
                    key = k * d + r
                    s2 = field.sub(col.get(key, field.zero), v)
                    if s2:
                        col[key] = s2
                    else:
                        col.pop(key, None)
                if col:
                    elim.add(col)
    return len(subsets) * d - elim.rank


# ---------------------------------------------------------------------------
# Classical bar complex of a finite group, kept independent of the
# machinery above so comparisons mean something.


def _local_tables(h_group):
    elems = list(h_group.elements)
    loc = {g.index: k for k, g in enumerate(elems)}
    mult = [[loc[(a * b).index] for b in elems] for a in elems]
    inv = [loc[a.inverse().index] for a in elems]
    return elems, mult, inv


def _check_group_rep(h_group, u: dict, field: Field):
    """Validate a representation keyed by group elements; return it
    indexed by local element position."""
    elems, mult, _ = _local_tables(h_group)
    try:
        mats = [u[g] for g in elems]
    except KeyError as exc:
        raise ValueError("representation must cover every element") from exc
    dims = {(m.nrows, m.ncols) for m in mats}
    if len(dims) != 1 or mats[0].nrows != mats[0].ncols:
        raise ValueError("representation matrices must be square, same size")
    if any(m.field != field for m in mats):
        raise ValueError("representation field mismatch")
    d = mats[0].nrows
    if mats[0] != SparseMatrix.identity(field, d):
        raise ValueError("identity element must act as the identity matrix")
    m = len(elems)
    for a in range(m):
        for b in range(m):
            if mats[a] * mats[b] != mats[mult[a][b]]:
                raise ValueError(f"not a homomorphism at pair ({a}, {b})")
    return mats


def _group_tuple_index(m: int, n: int) -> dict[tuple[int, ...], int]:
    return {t: k for k, t in enumerate(product(range(m), repeat=n))}


def group_homology(h_group, u: dict, field: Field, max_degree: int = 3,
                   cap: int = HOMOLOGY_SIZE_CAP) -> HomologyReport:
    """Classical bar-complex homology of a finite group or subgroup.

    ``u`` maps group elements to matrices over ``field``.  Chains in
    degree n are one copy of the representation space per n-tuple; the
    boundary acts through the inverse on the leading entry, so degree 0
    is the coinvariants for the action u . h = U(h^{-1}) u.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    elems, mult, inv = _local_tables(h_group)
    mats = _check_group_rep(h_group, u, field)
    m = len(elems)
    d = mats[0].nrows
    labels = {}
    diffs = {}
    for n in range(max_degree + 2):
        if (m ** n) * d > cap:
            raise SizeCapError(
                f"group chain space at degree {n} exceeds cap {cap}",
                limit=cap, requested=(m ** n) * d)
        labels[n] = [(t, i) for t in product(range(m), repeat=n)
                     for i in range(d)]
    for n in range(1, max_degree + 2):
        tpos = _group_tuple_index(m, n - 1)
        entries: dict[tuple[int, int], object] = {}

        def bump(r, c, v):
            s = field.add(entries.get((r, c), field.zero), v)
            if s:
                entries[(r, c)] = s
            else:
                entries.pop((r, c), None)

        for ct, hs in enumerate(product(range(m), repeat=n)):
            tail_off = tpos[hs[1:]] * d
            lead = mats[inv[hs[0]]]
            for i in range(d):
                c = ct * d + i
                for r, v in lead.column(i).items():
                    bump(tail_off + r, c, v)
                sign = field.neg(field.one)
                for j in range(n - 1):
                    merged = hs[:j] + (mult[hs[j]][hs[j + 1]],) + hs[j + 2:]
                    bump(tpos[merged] * d + i, c, sign)
                    sign = field.neg(sign)
                bump(tpos[hs[:-1]] * d + i, c, sign)
        diffs[n] = SparseMatrix(field, len(labels[n - 1]), len(labels[n]),
                                entries)
    cx = ChainComplex(field, labels, diffs)
    return HomologyReport(getattr(h_group, "name", "H"),
                          f"representation of dimension {d}", field,
                          "ordinary", cx.homology_dims(max_degree),
                          {"d2_zero": cx.d2_zero(), "homotopy_id": None})


def group_cohomology(h_group, u: dict, field: Field, max_degree: int = 3,
                     cap: int = HOMOLOGY_SIZE_CAP) -> HomologyReport:
    """Classical bar-complex cohomology; degree 0 is the invariants."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    elems, mult, inv = _local_tables(h_group)
    mats = _check_group_rep(h_group, u, field)
    m = len(elems)
    d = mats[0].nrows
    labels = {}
    diffs = {}
    for n in range(max_degree + 2):
        if (m ** n) * d > cap:
            raise SizeCapError(
                f"group cochain space at degree {n} exceeds cap {cap}",
                limit=cap, requested=(m ** n) * d)
        labels[n] = [(t, i) for t in product(range(m), repeat=n)
                     for i in range(d)]
    for n in range(1, max_degree + 2):
        tpos = _group_tuple_index(m, n - 1)
        entries: dict[tuple[int, int], object] = {}

        def bump(r, c, v):
            s = field.add(entries.get((r, c), field.zero), v)
            if s:
                entries[(r, c)] = s
            else:
                entries.pop((r, c), None)

        for ct, hs in enumerate(product(range(m), repeat=n)):
            tail_off = tpos[hs[1:]] * d
            lead = mats[hs[0]]
            for j in range(d):
                for r, v in lead.column(j).items():
                    bump(ct * d + r, tail_off + j, v)
                sign = field.neg(field.one)
                for i in range(n - 1):
                    merged = hs[:i] + (mult[hs[i]][hs[i + 1]],) + hs[i + 2:]
                    bump(ct * d + j, tpos[merged] * d + j, sign)
                    sign = field.neg(sign)
                bump(ct * d + j, tpos[hs[:-1]] * d + j, sign)
        diffs[n] = SparseMatrix(field, len(labels[n]), len(labels[n - 1]),
                                entries)
    cx = _CoComplex(field, labels, diffs)
    return HomologyReport(getattr(h_group, "name", "H"),
                          f"representation of dimension {d}", field,
                          "ordinary", cx.homology_dims(max_degree),
                          {"d2_zero": cx.d2_zero(), "homotopy_id": None})


# ---------------------------------------------------------------------------
# Comparison checks: induced modules against stabilizers, and the
# idempotent subalgebra against the sum over components.


def _compare(left: list[int], right: list[int]) -> dict:
    mismatch = next((i for i in range(len(left)) if left[i] != right[i]), None)
    return {"equal": mismatch is None, "first_mismatch": mismatch}


def verify_theorem_a(group, comp, u: dict, field: Field,
                     max_degree: int = 3,
                     cap: int = HOMOLOGY_SIZE_CAP) -> dict:
    """Induced-module (co)homology against the stabilizer's, degreewise.

    The left route induces the stabilizer representation along the
    component and runs the partial machinery; the right route runs the
    classical complex of the stabilizer directly.  The report lists both
    dimension vectors and the first degree where they disagree, if any.
    """
    from .groupoid import _set_str

    v = induce_module(comp, u, field)
    lh = partial_homology(group, v, field, max_degree, cap,
                          module_name="induced from stabilizer")
    rh = group_homology(comp.stabilizer, u, field, max_degree, cap)
    lc = partial_cohomology(group, v, field, max_degree, cap,
                            module_name="induced from stabilizer")
    rc = group_cohomology(comp.stabilizer, u, field, max_degree, cap)
    hom = {"partial": lh.dims, "ordinary": rh.dims, **_compare(lh.dims, rh.dims)}
    coh = {"partial": lc.dims, "ordinary": rc.dims, **_compare(lc.dims, rc.dims)}
    checks_ok = all([lh.checks["d2_zero"], lh.checks["homotopy_id"],
                     lc.checks["d2_zero"], lc.checks["homotopy_id"],
                     rh.checks["d2_zero"], rc.checks["d2_zero"]])
    return {
        "group": group.name,
        "component_base": _set_str(group, comp.base),
        "stabilizer": comp.stabilizer.name,
        "stabilizer_order": comp.stabilizer.order,
        "field": field.name,
        "max_degree": max_degree,
        "homology": hom,
        "cohomology": coh,
        "ok": hom["equal"] and coh["equal"] and checks_ok,
    }


def verify_corollary_b(group, field: Field, max_degree: int = 3,
                       cap: int = HOMOLOGY_SIZE_CAP) -> dict:
    """Idempotent-subalgebra (co)homology against the stabilizer sum.

    The left route runs the partial machinery on the idempotent
    subalgebra as a module over the whole algebra; the right route sums,
    component by component, the classical (co)homology of each stabilizer
    with trivial coefficients.
    """
    from .groupoid import _set_str

    bm = b_module(group, field)
    lh = partial_homology(group, bm, field, max_degree, cap,
                          module_name="idempotent subalgebra")
    lc = partial_cohomology(group, bm, field, max_degree, cap,
                            module_name="idempotent subalgebra")
    right_h = [0] * (max_degree + 1)
    right_c = [0] * (max_degree + 1)
    per_component = []
    for comp in components(build_groupoid(group)):
        stab = comp.stabilizer
        u = trivial_rep(stab, field)
        hr = group_homology(stab, u, field, max_degree, cap)
        cr = group_cohomology(stab, u, field, max_degree, cap)
        right_h = [a + b for a, b in zip(right_h, hr.dims)]
        right_c = [a + b for a, b in zip(right_c, cr.dims)]
        per_component.append({
            "base": _set_str(group, comp.base),
            "stabilizer_order": stab.order,
            "homology": hr.dims,
            "cohomology": cr.dims,
        })
    hom = {"partial": lh.dims, "stabilizer_sum": right_h,
           **_compare(lh.dims, right_h)}
    coh = {"partial": lc.dims, "stabilizer_sum": right_c,
           **_compare(lc.dims, right_c)}
    return {
        "group": group.name,
        "field": field.name,
        "max_degree": max_degree,
        "homology": hom,
        "cohomology": coh,
        "components": per_component,
        "ok": (hom["equal"] and coh["equal"]
               and lh.checks["d2_zero"] and lh.checks["homotopy_id"]
               and lc.checks["d2_zero"] and lc.checks["homotopy_id"]),
    }
