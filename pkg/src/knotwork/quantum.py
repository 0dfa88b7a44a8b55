"""
Exact quantum sl(N) link invariants.

The fundamental invariant is the quantum-trace transfer evaluation of a
slice word: crossings apply the R-matrix (Hecke normalization, eigenvalues
s and -1/s), cups and caps carry the trace weights s^(N+1-2i).  Colored
invariants cable the diagram, insert one primitive Hecke-algebra
idempotent as a ring-linear combination of braid-word insertions, and
normalize framing by curl scalars measured from curl diagrams — never
from hand-coded twist formulas, so convention drift cannot silently creep
in.

Idempotents are produced by eigen-decomposition of the Jucys-Murphy
elements in the regular representation of H_r over the rational-function
field; idempotency, orthogonality and completeness are asserted by the
test suite rather than imported from literature tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    mpz = int

from . import _engine
from ._engine import (
    ChunkTable, CompiledWord, EngineError, PackedContext, ResourceLimitError,
    build_chunk_table, compile_word, evaluate_compiled, run_packed_vector,
    tables_for,
)
from .diagrams import (
    CAP, CUP, XN, XP, DiagramError, SliceWord, unknot, unknot_with_curl,
)
from .moves import cable_events, parallel_cable
from .polynomials import (
    ExactDivisionError, LaurentPoly, ONE, RationalFunction, SparseOperator,
    ZERO, exact_divide, vanish_order_at_1, _poly_gcd,
)

__all__ = [
    "AlgebraSpec", "ColorSpec", "HeckeElement", "EvaluationReport",
    "CompareReport", "EngineError", "ResourceLimitError",
    "fundamental_r", "evaluate_slice", "curl_scalar", "young_idempotent",
    "colored_invariant", "compare_knots", "standard_tableaux",
    "quantum_dimension_formula", "vanish_order_loose",
]

DEFAULT_WIDTH_CAP = 12
DEFAULT_BITS = 96


@dataclass(frozen=True)
class AlgebraSpec:
    """The rank parameter: invariants of U_q(sl_N) type."""

    N: int

    def __post_init__(self):
        if self.N < 2:
            raise DiagramError("algebra rank must satisfy N >= 2")


@dataclass(frozen=True)
class ColorSpec:
    """A partition of r <= 3 plus a standard-tableau selector."""

    partition: tuple[int, ...]
    tableau: int = 0

    def __post_init__(self):
        p = tuple(self.partition)
        object.__setattr__(self, "partition", p)
        if not p or any(x < 1 for x in p) or list(p) != sorted(p, reverse=True):
            raise DiagramError(f"{p} is not a partition")
        if sum(p) > 3:
            raise DiagramError("supported colors have at most 3 cells")
        n_tabs = len(standard_tableaux(p))
        if not 0 <= self.tableau < n_tabs:
            raise DiagramError(
                f"partition {p} has {n_tabs} standard tableaux")

    @property
    def cells(self) -> int:
        return sum(self.partition)


def standard_tableaux(partition) -> list[tuple[tuple[int, int], ...]]:
    """All standard tableaux of a partition, each as a tuple indexed by
    entry k-1 giving the (row, col) cell of k."""
    partition = tuple(partition)
    n = sum(partition)
    results = []

    def fill(k, shape, placing):
        if k > n:
            results.append(tuple(placing))
            return
        for row, width in enumerate(partition):
            filled = shape[row]
            if filled < width and (row == 0 or shape[row - 1] > filled):
                shape[row] += 1
                placing.append((row, filled))
                fill(k + 1, shape, placing)
                placing.pop()
                shape[row] -= 1

    fill(1, [0] * len(partition), [])
    return results


def contents_of(tableau) -> list[int]:
    """Content (col - row) of the cell of each entry 1..n."""
    return [c - r for (r, c) in tableau]


def quantum_dimension_formula(partition, N: int) -> LaurentPoly:
    """Independent oracle: product of [N + content]/[hook] over cells."""
    from .polynomials import quantum_integer
    partition = tuple(partition)
    num = ONE
    den = ONE
    for r, width in enumerate(partition):
        for c in range(width):
            num = num * quantum_integer(N + c - r)
            arm = width - c - 1
            leg = sum(1 for r2 in range(r + 1, len(partition))
                      if partition[r2] > c)
            den = den * quantum_integer(arm + leg + 1)
    return exact_divide(num, den)


# ---------------------------------------------------------------------------
# Fundamental R-matrix as a sparse operator (module API surface)
# ---------------------------------------------------------------------------


def fundamental_r(N: int) -> tuple[SparseOperator, SparseOperator]:
    """The fundamental R-matrix on the N^2-dimensional tensor square and
    its inverse; basis e_i ⊗ e_j is row-major index i*N + j.

    R = swap ∘ Rhat where Rhat is the braiding satisfying the Hecke
    relation (Rhat - s)(Rhat + 1/s) = 0 and the braid (Yang-Baxter)
    relation.
    """
    tables = tables_for(N)
    dim = N * N
    fwd = {}
    inv = {}
    for (i, j), outs in tables.cross[(1, 1, True)].items():
        for (a, b), w in outs:
            # Rhat(e_i ⊗ e_j) = sum (a,b); R = swap ∘ Rhat: (b,a)
            fwd[(b * N + a, i * N + j)] = w
    for (i, j), outs in tables.cross[(1, 1, False)].items():
        # Rhat^-1; R^-1 = Rhat^-1 ∘ swap: act on swapped input
        for (a, b), w in outs:
            inv[(a * N + b, j * N + i)] = w
    return (SparseOperator(dim, dim, fwd), SparseOperator(dim, dim, inv))


# ---------------------------------------------------------------------------
# Plain evaluation
# ---------------------------------------------------------------------------


def evaluate_slice(word: SliceWord, alg: AlgebraSpec | int,
                   width_cap: int | None = DEFAULT_WIDTH_CAP,
                   bits: int = DEFAULT_BITS,
                   shadow: bool = True) -> LaurentPoly:
    """Framed (blackboard) quantum-trace evaluation of a closed word.

    Transfer contraction through the slices; cups and caps carry the
    quantum-trace weights.  Raises ResourceLimitError when the cut width
    exceeds ``width_cap``.
    """
    N = alg.N if isinstance(alg, AlgebraSpec) else int(alg)
    tables = tables_for(N)
    compiled = compile_word(word, N)
    ctx = PackedContext(bits)
    return evaluate_compiled(compiled, tables, ctx, width_cap=width_cap,
                             shadow=shadow)


# ---------------------------------------------------------------------------
# Hecke algebra H_r and the Jucys-Murphy eigenprojections
# ---------------------------------------------------------------------------


def _permutations(r: int):
    return sorted(itertools.permutations(range(r)))


def _perm_mul(p, q):
    """(p ∘ q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def _inversions(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p))
               if p[i] > p[j])


def _reduced_word(p) -> tuple[int, ...]:
    """A reduced word (generator indices, 1-based) via bubble sort."""
    p = list(p)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                changed = True
    return tuple(reversed(word))


class HeckeAlgebra:
    """H_r over the rational-function field, natural basis T_w.

    Generators satisfy (T_i - s)(T_i + 1/s) = 0; the multiplication rule
    T_i T_w = T_{s_i w} when the length goes up, else
    (s - 1/s) T_w + T_{s_i w}.
    """

    def __init__(self, r: int):
        if not 1 <= r <= 3:
            raise DiagramError("supported Hecke ranks are r <= 3")
        self.r = r
        self.perms = _permutations(r)
        self.index = {p: i for i, p in enumerate(self.perms)}
        self.dim = len(self.perms)
        self.words = [_reduced_word(p) for p in self.perms]
        s = LaurentPoly.monomial(1)
        self.delta = RationalFunction(s - LaurentPoly.monomial(-1))
        self.gen_matrices = [self._gen_matrix(i) for i in range(1, r)]

    def _gen_matrix(self, i: int):
        """Left multiplication by T_{s_i} in the natural basis."""
        m = [[RationalFunction(0) for _ in range(self.dim)]
             for _ in range(self.dim)]
        for col, w in enumerate(self.perms):
            s_i = list(range(self.r))
            s_i[i - 1], s_i[i] = s_i[i], s_i[i - 1]
            target = _perm_mul(tuple(s_i), w)
            if _inversions(target) > _inversions(w):
                m[self.index[target]][col] = RationalFunction(ONE)
            else:
                m[self.index[target]][col] = RationalFunction(ONE)
                m[col][col] = m[col][col] + self.delta
        return m

    def mat_mul(self, a, b):
        n = self.dim
        out = [[RationalFunction(0)] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                if a[i][k].is_zero():
                    continue
                aik = a[i][k]
                for j in range(n):
                    if not b[k][j].is_zero():
                        out[i][j] = out[i][j] + aik * b[k][j]
        return out

    def identity_matrix(self):
        out = [[RationalFunction(0)] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            out[i][i] = RationalFunction(ONE)
        return out

    def jucys_murphy(self, k: int):
        """J_k = T_{k-1} ... T_1 T_1 ... T_{k-1} (identity for k = 1)."""
        m = self.identity_matrix()
        for i in list(range(k - 1, 0, -1)) + list(range(1, k)):
            m = self.mat_mul(self.gen_matrices[i - 1], m)
        return m

    def element_from_matrix(self, m) -> dict[tuple[int, ...], RationalFunction]:
        """Read off coefficients: the column of T_identity."""
        col = self.index[tuple(range(self.r))]
        out = {}
        for i in range(self.dim):
            if not m[i][col].is_zero():
                out[self.words[i]] = m[i][col]
        return out


@dataclass(frozen=True)
class HeckeElement:
    """A Hecke algebra element as reduced braid words with coefficients."""

    r: int
    coeffs: tuple[tuple[tuple[int, ...], RationalFunction], ...]

    def as_dict(self):
        return dict(self.coeffs)


_HECKE_CACHE: dict[int, HeckeAlgebra] = {}
_IDEMPOTENT_CACHE: dict = {}


def _hecke(r: int) -> HeckeAlgebra:
    if r not in _HECKE_CACHE:
        _HECKE_CACHE[r] = HeckeAlgebra(r)
    return _HECKE_CACHE[r]


def _idempotent_matrix(r: int, partition, tableau_index: int):
    """Projector onto the chosen seminormal vector via JM eigenvalues
    s^(2*content)."""
    key = (r, tuple(partition), tableau_index)
    if key in _IDEMPOTENT_CACHE:
        return _IDEMPOTENT_CACHE[key]
    H = _hecke(r)
    tabs = standard_tableaux(partition)
    target = contents_of(tabs[tableau_index])

    # spectrum of J_k over all standard tableaux of all partitions of r
    all_parts = _partitions(r)
    spectra: dict[int, set[int]] = {k: set() for k in range(2, r + 1)}
    for p in all_parts:
        for t in standard_tableaux(p):
            cts = contents_of(t)
            for k in range(2, r + 1):
                spectra[k].add(cts[k - 1])

    proj = H.identity_matrix()
    for k in range(2, r + 1):
        jk = H.jucys_murphy(k)
        theta = RationalFunction(LaurentPoly.monomial(2 * target[k - 1]))
        for c in sorted(spectra[k]):
            if c == target[k - 1]:
                continue
            other = RationalFunction(LaurentPoly.monomial(2 * c))
            factor = [[(jk[i][j] - (other if i == j else RationalFunction(0)))
                       / (theta - other)
                       for j in range(H.dim)] for i in range(H.dim)]
            proj = H.mat_mul(proj, factor)
    _IDEMPOTENT_CACHE[key] = proj
    return proj


def _partitions(n: int):
    if n == 0:
        return [()]
    out = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return out


def young_idempotent(r: int, partition, tableau: int = 0) -> HeckeElement:
    """Primitive idempotent of H_r for the given partition and standard
    tableau, from Jucys-Murphy eigenprojection in the regular
    representation.  No hand-entered coefficient tables."""
    color = ColorSpec(tuple(partition), tableau)
    if color.cells != r:
        raise DiagramError("partition does not match the cable width")
    H = _hecke(r)
    m = _idempotent_matrix(r, color.partition, tableau)
    coeffs = H.element_from_matrix(m)
    return HeckeElement(r=r, coeffs=tuple(sorted(coeffs.items())))


# ---------------------------------------------------------------------------
# Cable plans with twist-region chunks
# ---------------------------------------------------------------------------


def _detect_twist_regions(word: SliceWord):
    """Spans [start, end) of events matching (cup i)(x i+1)^p (cap i+2)."""
    regions = []
    events = word.events
    t = 0
    while t < len(events):
        kind, pos = events[t]
        if kind == CUP:
            u = t + 1
            while u < len(events) and events[u][0] in (XP, XN) and \
                    events[u][1] == pos + 1:
                u += 1
            if u > t + 1 and u < len(events) and events[u] == (CAP, pos + 2):
                regions.append((t, u + 1, pos))
                t = u + 1
                continue
        t += 1
    return regions


_CHUNK_CACHE: dict = {}


def _cable_plan(host: SliceWord, r: int, N: int, ctx: PackedContext,
                use_chunks: bool = True):
    """Compile the r-cable of a host word, replacing cabled twist regions
    by chunk operators.  Returns (compiled, chunks dict)."""
    mults = {c: r for c in range(host.component_count())}
    events, intents, emap = cable_events(host, mults)
    from .diagrams import resolve_intents
    cabled = SliceWord(resolve_intents(events, 0, 0, intents))
    compiled = compile_word(cabled, N)
    chunks: dict[int, object] = {}
    if not use_chunks or r == 1:
        return compiled, chunks, cabled

    tables = tables_for(N)
    for (start, end, host_pos) in _detect_twist_regions(host):
        c_start = emap[start][0]
        c_end = emap[end - 1][1]
        base_slot = compiled.steps[c_start][1]
        # group the cabled interior crossings by host crossing
        groups = []
        for t in range(start + 1, end - 1):
            lo, hi = emap[t]
            group = []
            for idx in range(lo, hi):
                step = compiled.steps[idx]
                group.append((step[0], step[1] - base_slot, step[2]))
            groups.append(group)
        cup_variant = compiled.steps[c_start][2]
        cap_variant = compiled.steps[c_end - 1][2]
        key = (N, r, cup_variant, cap_variant,
               tuple(tuple(g) for g in groups))
        if key not in _CHUNK_CACHE:
            _CHUNK_CACHE[key] = build_chunk_table(
                N, r, cup_variant, cap_variant, groups, tables, ctx)
        table = _CHUNK_CACHE[key]
        chunks[c_start] = (base_slot, table)
        for idx in range(c_start + 1, c_end):
            chunks[idx] = None
    return compiled, chunks, cabled


# ---------------------------------------------------------------------------
# Colored invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvaluationReport:
    """Exact colored evaluation: framed value, curl scalar, writhe, the
    curl-normalized invariant Q, and the colored unknot value Q_O."""

    algebra: int
    color: tuple[int, ...]
    tableau: int
    framed: LaurentPoly
    curl: LaurentPoly
    writhe: int
    normalized: LaurentPoly
    unknot_value: LaurentPoly

    def to_json(self) -> dict:
        return {
            "format": 1,
            "type": "evaluation_report",
            "algebra": self.algebra,
            "color": list(self.color),
            "tableau": self.tableau,
            "writhe": self.writhe,
            "framed": self.framed.text(),
            "curl": self.curl.text(),
            "normalized": self.normalized.text(),
            "unknot_value": self.unknot_value.text(),
        }


def _poly_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    g = _poly_gcd(a, b)
    return exact_divide(a * b, g)


def _color_machinery(alg_N: int, color: ColorSpec, ctx: PackedContext):
    """The idempotent's braid-word terms with cleared denominators.

    Returns (terms, D) with terms = [(word, scale poly)] and D the common
    denominator: sum scale_u/D * T_u is the idempotent.
    """
    r = color.cells
    p = young_idempotent(r, color.partition, color.tableau)
    coeffs = p.as_dict()
    D = ONE
    for rf in coeffs.values():
        D = _poly_lcm(D, rf.den)
    terms = []
    for word_u, rf in sorted(coeffs.items()):
        scale = rf.num * exact_divide(D, rf.den)
        terms.append((word_u, scale))
    return terms, D


def _projected_cable_value(host: SliceWord, alg_N: int, color: ColorSpec,
                           ctx: PackedContext, width_cap: int | None,
                           shadow: bool = True) -> LaurentPoly:
    """D-scaled framed value of the r-cable of ``host`` with the chosen
    idempotent inserted after the first cup's cable nest."""
    r = color.cells
    tables = tables_for(alg_N)
    compiled, chunks, _ = _cable_plan(host, r, alg_N, ctx)

    if compiled.steps[0][0] != "cup":
        raise EngineError("host word must open with a cup")
    # the first host cup's nest: r consecutive cup steps
    nest = compiled.steps[:r]
    if any(st[0] != "cup" for st in nest):
        raise EngineError("cable nest missing at word start")
    dl, dr = nest[0][2]
    bundle_base = 0 if dl == 1 else r

    terms, D = _color_machinery(alg_N, color, ctx)

    tail = compiled.steps[r:]
    tail_chunks = {}
    for idx, marker in chunks.items():
        if idx < r:
            raise EngineError("chunk overlaps the insertion nest")
        tail_chunks[idx - r] = marker
    tail_compiled = CompiledWord(N=alg_N, steps=tail,
                                 max_width=compiled.max_width)

    combined: dict[int, object] = {}
    offsets = []
    vecs = []
    for word_u, scale in terms:
        steps = list(nest)
        for g in word_u:
            steps.append(("cross", bundle_base + g - 1, (1, 1, True)))
        prefix = CompiledWord(N=alg_N, steps=steps, max_width=2 * r)
        vec, off = run_packed_vector(prefix, tables, ctx)
        sc_int, sc_lo = ctx.pack_shifted(scale)
        vec = {k: v * sc_int for k, v in vec.items()}
        vecs.append(vec)
        offsets.append(off + sc_lo)
    common = min(offsets)
    for vec, off in zip(vecs, offsets):
        shift = (off - common) * ctx.bits
        for k, v in vec.items():
            term = v << shift
            if k in combined:
                combined[k] += term
            else:
                combined[k] = term
    combined = {k: v for k, v in combined.items() if v}

    value = evaluate_compiled(tail_compiled, tables, ctx,
                              width_cap=width_cap, initial=combined,
                              initial_offset=common, chunks=tail_chunks,
                              initial_width=2 * r, shadow=shadow)
    return value, D


def colored_invariant(knot: SliceWord, alg: AlgebraSpec | int,
                      color: ColorSpec | tuple, tableau: int | None = None,
                      width_cap: int | None = DEFAULT_WIDTH_CAP,
                      bits: int = DEFAULT_BITS,
                      shadow: bool = True) -> EvaluationReport:
    """Exact invariant of a knot colored by a partition of r <= 3.

    The r-cable of the diagram is evaluated with one Young idempotent
    inserted; the result is divided by the measured curl scalar to the
    writhe.  The report asserts that the invariant is a Laurent
    polynomial after clearing the idempotent's denominators.
    """
    N = alg.N if isinstance(alg, AlgebraSpec) else int(alg)
    if not isinstance(color, ColorSpec):
        color = ColorSpec(tuple(color), tableau or 0)
    if knot.component_count() != 1:
        raise DiagramError("colored invariants are computed for knots")
    ctx = PackedContext(bits)
    w = knot.writhe()
    r = color.cells

    if r == 1:
        framed = evaluate_slice(knot, N, width_cap, bits, shadow)
        unknot_value = evaluate_slice(unknot(), N, width_cap, bits, shadow)
        curl_value = evaluate_slice(unknot_with_curl(1), N, width_cap, bits,
                                    shadow)
        curl = exact_divide(curl_value, unknot_value)
    else:
        framed_D, D = _projected_cable_value(knot, N, color, ctx, width_cap,
                                             shadow)
        unknot_D, _ = _projected_cable_value(unknot(), N, color, ctx,
                                             width_cap, shadow)
        curl_D, _ = _projected_cable_value(unknot_with_curl(1), N, color,
                                           ctx, width_cap, shadow)
        curl = exact_divide(curl_D, unknot_D)
        framed = exact_divide(framed_D, D)
        unknot_value = exact_divide(unknot_D, D)
    if not curl.is_unit():
        raise EngineError(f"curl scalar is not a unit monomial: {curl.text()}")
    normalized = framed * curl ** (-w)
    return EvaluationReport(
        algebra=N, color=color.partition, tableau=color.tableau,
        framed=framed, curl=curl, writhe=w, normalized=normalized,
        unknot_value=unknot_value)


def curl_scalar(alg: AlgebraSpec | int, color: ColorSpec | tuple = (1,),
                tableau: int = 0, bits: int = DEFAULT_BITS) -> LaurentPoly:
    """The scalar by which a positive curl acts on a cabled, projected
    strand, measured by evaluating a curl diagram."""
    N = alg.N if isinstance(alg, AlgebraSpec) else int(alg)
    if not isinstance(color, ColorSpec):
        color = ColorSpec(tuple(color), tableau)
    report = colored_invariant(unknot_with_curl(1), N, color,
                               width_cap=None, bits=bits)
    return report.curl


@dataclass(frozen=True)
class CompareReport:
    """Pairwise comparison of colored invariants.

    ``order`` is the vanishing order of the difference at q = 1 (the
    minimal order of a Vassiliev invariant distinguishing the knots);
    math.inf when the invariants agree.
    """

    algebra: int
    color: tuple[int, ...]
    q1: LaurentPoly
    q2: LaurentPoly
    difference: LaurentPoly
    quotient: LaurentPoly
    order: float

    def distinguished(self) -> bool:
        return not self.difference.is_zero()

    def to_json(self) -> dict:
        import math
        return {
            "format": 1,
            "type": "compare_report",
            "algebra": self.algebra,
            "color": list(self.color),
            "q1": self.q1.text(),
            "q2": self.q2.text(),
            "difference": self.difference.text(),
            "quotient": self.quotient.text(),
            "order": None if self.order == math.inf else int(self.order),
        }


def vanish_order_loose(p: LaurentPoly) -> float:
    """Vanishing order at q = 1 via (1 - s)-divisibility.

    Agrees with :func:`vanish_order_at_1` on q-expressible input and
    extends it to odd s-exponents (each (1-q) factor contributes exactly
    one (1-s)).
    """
    import math
    if p.is_zero():
        return math.inf
    one_minus_s = ONE - LaurentPoly.monomial(1)
    order = 0
    while True:
        if p.evaluate(1) != 0:
            return order
        p = exact_divide(p, one_minus_s)
        order += 1


def compare_knots(k1: SliceWord, k2: SliceWord, alg: AlgebraSpec | int,
                  color: ColorSpec | tuple, tableau: int | None = None,
                  width_cap: int | None = DEFAULT_WIDTH_CAP,
                  bits: int = DEFAULT_BITS,
                  shadow: bool = True) -> CompareReport:
    """Difference of colored invariants, its quotient by the colored
    unknot value, and the vanishing order at q = 1."""
    import math
    N = alg.N if isinstance(alg, AlgebraSpec) else int(alg)
    if not isinstance(color, ColorSpec):
        color = ColorSpec(tuple(color), tableau or 0)
    r1 = colored_invariant(k1, N, color, width_cap=width_cap, bits=bits,
                           shadow=shadow)
    r2 = colored_invariant(k2, N, color, width_cap=width_cap, bits=bits,
                           shadow=shadow)
    if r1.unknot_value != r2.unknot_value:
        raise EngineError("colored unknot values disagree between runs")
    diff = r1.normalized - r2.normalized
    if diff.is_zero():
        return CompareReport(N, color.partition, r1.normalized,
                             r2.normalized, ZERO, ZERO, math.inf)
    quotient = exact_divide(diff, r1.unknot_value)
    if quotient.is_q_expressible():
        order = vanish_order_at_1(quotient)
    else:
        order = vanish_order_loose(quotient)
    return CompareReport(N, color.partition, r1.normalized, r2.normalized,
                         diff, quotient, order)
