"""
Sparse transfer contraction for quantum sl(N) invariants.

Slice words are evaluated by sweeping a state vector through the events;
a state assigns one of N letters to every strand position.  The braiding
conserves the multiset of letters, so vectors stay supported on a thin
content sector and are kept as dictionaries keyed by base-N packed
integers.

Coefficients are Laurent polynomials in s packed into big integers
(Kronecker substitution: s^k -> 2^(B*k) with balanced signed digits, plus
a global exponent offset).  Addition and scalar multiplication become
integer arithmetic, which is what makes the eleven-crossing cable
computations fit in minutes.  Every evaluation is re-run over GF(p) with
s specialized to fixed units (the "shadow"); agreement certifies that no
packed digit overflowed.

Strand directions matter: the fundamental representation of sl(N) is not
self-dual for N > 2, so cups, caps and crossings each come in direction
variants.  Only the up-up braiding is postulated; the mixed and down-down
crossing tables are derived by bending (rotation recipes), which keeps
every convention consistent with the duality maps by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int

from .diagrams import CAP, CUP, XN, XP, DiagramError, SliceWord
from .polynomials import LaurentPoly, ONE, ZERO

__all__ = [
    "EngineError", "ResourceLimitError", "Tables", "tables_for",
    "CompiledWord", "compile_word", "PackedContext", "evaluate_compiled",
    "run_packed_vector", "ChunkTable", "build_chunk_table", "SHADOW_PRIME",
]


class EngineError(RuntimeError):
    """Internal inconsistency in the evaluation engine."""


class ResourceLimitError(RuntimeError):
    """A configured resource cap (cut width) would be exceeded."""


SHADOW_PRIME = (1 << 61) - 1
SHADOW_POINTS = (3, 65537)


# ---------------------------------------------------------------------------
# Operator tables
# ---------------------------------------------------------------------------

CrossTable = dict[tuple[int, int], list[tuple[tuple[int, int], LaurentPoly]]]


@dataclass
class Tables:
    """Direction-resolved elementary operator tables for one N.

    ``cup[(dL,dR)]`` lists ((i,j), weight); ``cap[(dL,dR)]`` maps the
    matched letter to its weight; ``cross[(dL,dR,left_over)]`` is a
    CrossTable.  Directions are +1 (up) / -1 (down).
    """

    N: int
    mu: list[LaurentPoly]
    cup: dict
    cap: dict
    cross: dict

    def quantum_dimension(self) -> LaurentPoly:
        total = ZERO
        for w in self.mu:
            total = total + w
        return total


def _rhat(N: int) -> CrossTable:
    s = LaurentPoly.monomial(1)
    d = s - LaurentPoly.monomial(-1)
    out: CrossTable = {}
    for i in range(N):
        for j in range(N):
            if i == j:
                out[(i, j)] = [((i, j), s)]
            elif i < j:
                out[(i, j)] = [((j, i), ONE)]
            else:
                out[(i, j)] = [((j, i), ONE), ((i, j), d)]
    return out


def _rhat_inv(N: int) -> CrossTable:
    sinv = LaurentPoly.monomial(-1)
    d = LaurentPoly.monomial(1) - sinv
    out: CrossTable = {}
    for i in range(N):
        for j in range(N):
            if i == j:
                out[(i, j)] = [((i, j), sinv)]
            elif i < j:
                out[(i, j)] = [((j, i), ONE), ((i, j), -d)]
            else:
                out[(i, j)] = [((j, i), ONE)]
    return out


def _mini_apply(steps, vec):
    """Apply mini-steps to {state tuple: LaurentPoly} dictionaries."""
    for kind, pos, table in steps:
        new: dict[tuple, LaurentPoly] = {}
        if kind == "cup":
            for state, val in vec.items():
                for pair, w in table:
                    ns = state[:pos] + pair + state[pos:]
                    term = val * w
                    prev = new.get(ns)
                    new[ns] = term if prev is None else prev + term
        elif kind == "cap":
            for state, val in vec.items():
                a, b = state[pos], state[pos + 1]
                if a != b or a not in table:
                    continue
                ns = state[:pos] + state[pos + 2:]
                term = val * table[a]
                prev = new.get(ns)
                new[ns] = term if prev is None else prev + term
        else:
            for state, val in vec.items():
                ab = (state[pos], state[pos + 1])
                for out_pair, w in table.get(ab, ()):
                    ns = state[:pos] + out_pair + state[pos + 2:]
                    term = val * w
                    prev = new.get(ns)
                    new[ns] = term if prev is None else prev + term
        vec = {k: v for k, v in new.items() if not v.is_zero()}
    return vec


def _derive_rotated(N, cup, cap, inner: CrossTable, side: str) -> CrossTable:
    """Bend one strand of a crossing around a cup/cap pair.

    "right": from the (up, d) table produce (d, down); "left": from
    (d, up) produce (down, d).  Both recipes flip the crossing's
    left-over flag, which the caller accounts for.
    """
    if side == "right":
        steps = [("cup", 0, cup[(-1, 1)]), ("cross", 1, inner),
                 ("cap", 2, cap[(1, -1)])]
    else:
        steps = [("cup", 2, cup[(1, -1)]), ("cross", 1, inner),
                 ("cap", 0, cap[(-1, 1)])]
    out: CrossTable = {}
    for a in range(N):
        for b in range(N):
            vec = _mini_apply(steps, {(a, b): ONE})
            terms = [(state, val) for state, val in vec.items()]
            if any(len(st) != 2 for st, _ in terms):
                raise EngineError("rotation recipe produced wrong arity")
            if terms:
                out[(a, b)] = terms
    return out


_TABLES_CACHE: dict[int, Tables] = {}


def tables_for(N: int) -> Tables:
    if N in _TABLES_CACHE:
        return _TABLES_CACHE[N]
    if N < 2:
        raise DiagramError("algebra rank must satisfy N >= 2")
    mu = [LaurentPoly.monomial(N + 1 - 2 * (i + 1)) for i in range(N)]
    cup = {
        (1, -1): [((i, i), ONE) for i in range(N)],
        (-1, 1): [((i, i), LaurentPoly.monomial(-(N + 1 - 2 * (i + 1))))
                  for i in range(N)],
    }
    cap = {
        (1, -1): {i: mu[i] for i in range(N)},
        (-1, 1): {i: ONE for i in range(N)},
    }
    cross = {
        (1, 1, True): _rhat(N),
        (1, 1, False): _rhat_inv(N),
    }
    for over in (True, False):
        cross[(1, -1, over)] = _derive_rotated(
            N, cup, cap, cross[(1, 1, not over)], "right")
    for over in (True, False):
        cross[(-1, 1, over)] = _derive_rotated(
            N, cup, cap, cross[(1, 1, not over)], "left")
    for over in (True, False):
        cross[(-1, -1, over)] = _derive_rotated(
            N, cup, cap, cross[(1, -1, not over)], "right")
    t = Tables(N=N, mu=mu, cup=cup, cap=cap, cross=cross)
    _TABLES_CACHE[N] = t
    return t


# ---------------------------------------------------------------------------
# Word compilation
# ---------------------------------------------------------------------------


@dataclass
class CompiledWord:
    """Direction-resolved event stream ready for any backend.

    steps: ("cup", pos, (dL,dR)) | ("cap", pos, (dL,dR)) |
           ("cross", pos, (dL,dR,left_over))
    """

    N: int
    steps: list
    max_width: int


def compile_word(word: SliceWord, N: int) -> CompiledWord:
    if not word.is_closed():
        raise DiagramError("evaluation requires a closed diagram")
    tr = word.trace

    steps = []
    width = 0
    peak = 0
    for t, (kind, pos) in enumerate(word.events):
        a, b = tr.event_segments[t]
        da = tr.seg_dir[a] * word.orientations[tr.seg_component[a]]
        db = tr.seg_dir[b] * word.orientations[tr.seg_component[b]]
        if kind == CUP:
            steps.append(("cup", pos, (da, db)))
            width += 2
        elif kind == CAP:
            steps.append(("cap", pos, (da, db)))
            width -= 2
        else:
            sign = 1 if kind == XP else -1
            steps.append(("cross", pos, (da, db, sign * da * db > 0)))
        peak = max(peak, width)
    return CompiledWord(N=N, steps=steps, max_width=peak)


def effective_width(compiled: CompiledWord, chunks: dict | None,
                    initial_width: int = 0) -> int:
    width = initial_width
    peak = width
    for idx, step in enumerate(compiled.steps):
        if chunks and idx in chunks:
            continue  # chunk interiors never materialize
        kind = step[0]
        width += 2 if kind == "cup" else -2 if kind == "cap" else 0
        peak = max(peak, width)
    return peak


# ---------------------------------------------------------------------------
# Packing
# ---------------------------------------------------------------------------


class PackedContext:
    """Kronecker packing parameters shared by one computation."""

    def __init__(self, bits: int = 96):
        self.bits = bits
        self.base = 1 << bits
        self.half = 1 << (bits - 1)

    def pack_shifted(self, p: LaurentPoly) -> tuple:
        """(integer, lo) with p = s^lo * decode(integer)."""
        if p.is_zero():
            return mpz(0), 0
        lo = p.min_exp()
        total = mpz(0)
        for e, c in p.items():
            total += mpz(c) << (self.bits * (e - lo))
        return total, lo

    def pack_nonneg(self, p: LaurentPoly):
        """Pack a polynomial whose exponents are already nonnegative,
        keeping its alignment (exponent 0 at digit 0)."""
        total = mpz(0)
        for e, c in p.items():
            if e < 0:
                raise EngineError("pack_nonneg got a negative exponent")
            total += mpz(c) << (self.bits * e)
        return total

    def unpack(self, value, offset: int = 0) -> LaurentPoly:
        coeffs = {}
        v = int(value)
        e = 0
        while v:
            d = v & (self.base - 1)
            if d >= self.half:
                d -= self.base
            if d:
                coeffs[e + offset] = d
            v = (v - d) >> self.bits
            e += 1
        return LaurentPoly(coeffs)


# ---------------------------------------------------------------------------
# Chunk tables (cabled twist regions)
# ---------------------------------------------------------------------------


@dataclass
class ChunkTable:
    """Operator replacing a cabled twist region on its 2r through-strands.

    rows: input letter-code -> list of (output code, packed scalar); the
    true scalar is s^lo * decode(packed).  letters = 2r.
    """

    letters: int
    rows: dict
    lo: int
    mod_rows: dict = field(default_factory=dict)   # point -> rows over GF(p)

    def modular(self, point: int) -> dict:
        return self.mod_rows[point]


def build_chunk_table(N: int, r: int, cup_variant, cap_variant,
                      cross_step_groups, tables: Tables,
                      ctx: PackedContext,
                      shadow_points=SHADOW_POINTS) -> ChunkTable:
    """Build the operator of one cabled twist region.

    ``cross_step_groups`` is the list of compiled crossing steps of the
    region's interior (p groups of r*r steps, slot positions relative to
    the region's window of 4r strands; the cup-nest occupies [0, 2r) and
    the winding strands [r, 3r)).  The contraction with the cup/cap nests
    reduces the operator to the 2r through-strands.  The packed table is
    verified entry-by-entry against independently composed modular
    tables, which the shadow sweeps then reuse.
    """
    letters = 2 * r

    # Symbolic per-group operators, cached by the group's step signature
    # (host twist interiors alternate between two direction signatures).
    sym_cache: dict[tuple, dict] = {}
    group_syms = []
    for group in cross_step_groups:
        sig = tuple((pos, key) for (_, pos, key) in group)
        if sig not in sym_cache:
            sym = {}
            mini = [("cross", pos - r, tables.cross[key])
                    for (_, pos, key) in group]
            for code in range(N ** letters):
                state = tuple((code // N ** k) % N for k in range(letters))
                vec = _mini_apply(mini, {state: ONE})
                sym[code] = vec
            los = [p.min_exp() for vec in sym.values()
                   for p in vec.values() if not p.is_zero()]
            sym_cache[sig] = (sym, min(los) if los else 0)
        group_syms.append(sym_cache[sig])

    def group_rows(sym, lo_group, point):
        step_rows = {}
        for code, vec in sym.items():
            entries = []
            for state2, poly in vec.items():
                code2 = 0
                for k, letter in enumerate(state2):
                    code2 += letter * N ** k
                shifted = poly.shift(-lo_group)
                if point is None:
                    entries.append((code2, ctx.pack_nonneg(shifted)))
                else:
                    entries.append(
                        (code2, shifted.evaluate_mod(point, SHADOW_PRIME)))
            if entries:
                step_rows[code] = entries
        return step_rows

    def compose_all(point):
        rows = None
        lo_total = 0
        for sym, lo_group in group_syms:
            step_rows = group_rows(sym, lo_group, point)
            rows = step_rows if rows is None else \
                _compose_rows(rows, step_rows, point)
            lo_total += lo_group
        return rows, lo_total

    packed_rows, lo = compose_all(None)
    chunk = _contract_with_nests(N, r, packed_rows, lo, cup_variant,
                                 cap_variant, tables, ctx, None)
    for point in shadow_points:
        mod_rows, mod_lo = compose_all(point)
        mchunk = _contract_with_nests(N, r, mod_rows, mod_lo, cup_variant,
                                      cap_variant, tables, ctx, point)
        _verify_chunk(chunk, mchunk, point, ctx)
        chunk.mod_rows[point] = mchunk.rows
    return chunk


def _compose_rows(first, second, point):
    """second ∘ first on packed/modular rows (apply first, then second)."""
    P = SHADOW_PRIME
    out = {}
    for code, entries in first.items():
        acc: dict[int, object] = {}
        for mid, sc1 in entries:
            for code2, sc2 in second.get(mid, ()):
                term = sc1 * sc2
                if point is not None:
                    term %= P
                if code2 in acc:
                    acc[code2] += term
                else:
                    acc[code2] = term
        if point is not None:
            acc = {k: v % P for k, v in acc.items() if v % P}
        else:
            acc = {k: v for k, v in acc.items() if v}
        if acc:
            out[code] = list(acc.items())
    return out


def _contract_with_nests(N, r, interior_rows, interior_lo, cup_variant,
                         cap_variant, tables, ctx, point) -> ChunkTable:
    """Close the interior operator with the cabled cup/cap nests.

    Window layout (4r strands): [0,r) new bundle from the cup nest,
    [r,2r) its partner (first winding bundle), [2r,3r) the incoming upper
    through-bundle, [3r,4r) the incoming lower through-bundle.  The cup
    nest pairs slot k with slot 2r-1-k; interior crossings act on
    [r, 3r); the cap nest pairs slot 2r+k with 4r-1-k.

    In through-strand terms: inputs (a, b) are the two incoming bundles;
    outputs (x, y) with x the cup-born bundle and y the surviving interior
    output.  Entries: over all w: cupw(x) * interior[(rev(x), a) -> (y, v)]
    * capw(b) [v == rev(b)].
    """
    P = SHADOW_PRIME
    cupw = dict(tables.cup[cup_variant])
    capw = tables.cap[cap_variant]

    def scal(p: LaurentPoly):
        return p if point is None else p.evaluate_mod(point, P)

    cup_weights = {i: scal(cupw[(i, i)]) for i in range(N)}
    cap_weights = {i: scal(capw[i]) for i in range(N)}
    cup_lo = min(w.min_exp() for (_, _), w in tables.cup[cup_variant])
    cap_lo = min(w.min_exp() for w in capw.values())

    # Normalize weights to the common lo so scalars stay integral.
    def weight_int(p: LaurentPoly, lo):
        q = p.shift(-lo)
        if point is None:
            return ctx.pack_nonneg(q)
        return q.evaluate_mod(point, P)

    cup_int = {i: weight_int(cupw[(i, i)], cup_lo) for i in range(N)}
    cap_int = {i: weight_int(capw[i], cap_lo) for i in range(N)}

    letters = 2 * r
    rows: dict[int, list] = {}
    npow = [N ** k for k in range(letters + 1)]

    for code_in, entries in interior_rows.items():
        # interior input letters: [0,2r) = (first winding bundle, upper
        # through bundle) i.e. (w, a) with w at [0,r), a at [r,2r)
        w_letters = [(code_in // npow[k]) % N for k in range(r)]
        a_letters = [(code_in // npow[r + k]) % N for k in range(r)]
        # cup nest: x_k paired with w_{r-1-k}  =>  x = reversed(w)
        x_letters = list(reversed(w_letters))
        cupfactor = mpz(1) if point is None else 1
        for xl in x_letters:
            cupfactor = cupfactor * cup_int[xl]
            if point is not None:
                cupfactor %= P
        in_code = 0
        for k, letter in enumerate(a_letters):
            in_code += letter * npow[k]
        x_code = 0
        for k, letter in enumerate(x_letters):
            x_code += letter * npow[k]
        for code_mid, sc in entries:
            y_letters = [(code_mid // npow[k]) % N for k in range(r)]
            v_letters = [(code_mid // npow[r + k]) % N for k in range(r)]
            # cap nest: v_k pairs with b_{r-1-k}  =>  b = reversed(v)
            b_letters = list(reversed(v_letters))
            capfactor = mpz(1) if point is None else 1
            for vl in v_letters:
                capfactor = capfactor * cap_int[vl]
                if point is not None:
                    capfactor %= P
            b_code = 0
            for k, letter in enumerate(b_letters):
                b_code += letter * npow[k]
            y_code = 0
            for k, letter in enumerate(y_letters):
                y_code += letter * npow[k]
            # through-strand window: upper bundle in the low digits
            key_in = in_code + b_code * npow[r]
            key_out = x_code + y_code * npow[r]
            term = sc * cupfactor * capfactor
            if point is not None:
                term %= P
            rows.setdefault(key_in, {})
            prev = rows[key_in].get(key_out)
            rows[key_in][key_out] = term if prev is None else prev + term

    clean = {}
    for k, acc in rows.items():
        if point is not None:
            entries = [(k2, v % P) for k2, v in acc.items() if v % P]
        else:
            entries = [(k2, v) for k2, v in acc.items() if v]
        if entries:
            clean[k] = entries
    return ChunkTable(letters=letters, rows=clean,
                      lo=interior_lo + r * (cup_lo + cap_lo))


def _verify_chunk(chunk: ChunkTable, mod_chunk: ChunkTable, point, ctx):
    P = SHADOW_PRIME
    if chunk.lo != mod_chunk.lo:
        raise EngineError("chunk verification: offset mismatch")
    keys = set(chunk.rows) | set(mod_chunk.rows)
    for k in keys:
        got = {k2: v % P for k2, v in mod_chunk.rows.get(k, [])}
        want = {}
        for k2, packed in chunk.rows.get(k, []):
            want[k2] = ctx.unpack(packed).evaluate_mod(point, P)
        if got != {k2: v for k2, v in want.items() if v}:
            raise EngineError("chunk verification failed "
                              f"(packing overflow at bits={ctx.bits})")


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def run_packed_vector(compiled: CompiledWord, tables: Tables,
                      ctx: PackedContext,
                      initial: dict | None = None, initial_offset: int = 0,
                      chunks: dict | None = None):
    """Packed sweep; returns (vector dict, offset)."""
    N = compiled.N
    vec: dict[int, object] = dict(initial) if initial is not None else {0: mpz(1)}
    offset = initial_offset

    cross_cache: dict = {}
    cup_cache: dict = {}
    cap_cache: dict = {}

    for idx, step in enumerate(compiled.steps):
        if chunks is not None and idx in chunks:
            chunk = chunks[idx]
            if chunk is None:
                continue
            slot, table = chunk
            rows = table.rows
            stride = N ** slot
            ext = N ** table.letters
            new: dict[int, object] = {}
            for key, val in vec.items():
                high, rest = divmod(key, stride * ext)
                code = rest // stride
                base_key = high * ext * stride + key % stride
                for code2, scal in rows.get(code, ()):
                    nk = base_key + code2 * stride
                    term = val * scal
                    if nk in new:
                        new[nk] += term
                    else:
                        new[nk] = term
            vec = {k: v for k, v in new.items() if v}
            offset += table.lo
            continue

        kind, pos = step[0], step[1]
        stride = N ** pos
        n2 = N * N
        new = {}
        if kind == "cup":
            variant = step[2]
            if variant not in cup_cache:
                pairs = tables.cup[variant]
                lo = min(w.min_exp() for _, w in pairs)
                cup_cache[variant] = ([(i + N * j,
                                        ctx.pack_nonneg(w.shift(-lo)))
                                       for (i, j), w in pairs], lo)
            entries, lo = cup_cache[variant]
            for key, val in vec.items():
                high, low = divmod(key, stride)
                base_key = high * n2 * stride + low
                for code, scal in entries:
                    nk = base_key + code * stride
                    term = val * scal
                    if nk in new:
                        new[nk] += term
                    else:
                        new[nk] = term
            offset += lo
        elif kind == "cap":
            variant = step[2]
            if variant not in cap_cache:
                lo = min(w.min_exp() for w in tables.cap[variant].values())
                cap_cache[variant] = ({i: ctx.pack_nonneg(w.shift(-lo))
                                       for i, w in tables.cap[variant].items()},
                                      lo)
            weights, lo = cap_cache[variant]
            for key, val in vec.items():
                high, rest = divmod(key, stride * n2)
                code = rest // stride
                i, j = code % N, code // N
                if i != j:
                    continue
                nk = high * stride + key % stride
                term = val * weights[i]
                if nk in new:
                    new[nk] += term
                else:
                    new[nk] = term
            offset += lo
        else:
            tkey = step[2]
            if tkey not in cross_cache:
                table = tables.cross[tkey]
                lo = min(p.min_exp() for outs in table.values() for _, p in outs)
                by_code = {}
                for (a, b), outs in table.items():
                    by_code[a + N * b] = [
                        (a2 + N * b2, ctx.pack_nonneg(p.shift(-lo)))
                        for (a2, b2), p in outs]
                cross_cache[tkey] = (by_code, lo)
            by_code, lo = cross_cache[tkey]
            for key, val in vec.items():
                high, rest = divmod(key, stride * n2)
                code = rest // stride
                base_key = high * n2 * stride + key % stride
                for code2, scal in by_code.get(code, ()):
                    nk = base_key + code2 * stride
                    term = val * scal
                    if nk in new:
                        new[nk] += term
                    else:
                        new[nk] = term
            offset += lo
        vec = {k: v for k, v in new.items() if v}
    return vec, offset


def run_modular_scalar(compiled: CompiledWord, tables: Tables, point: int,
                       initial: dict | None = None, initial_offset: int = 0,
                       chunks: dict | None = None,
                       ctx: PackedContext | None = None) -> int:
    """Modular sweep with true scalar values (no offsets); the result is
    directly comparable to (final polynomial)(point) mod p."""
    N = compiled.N
    P = SHADOW_PRIME
    if initial is None:
        vec = {0: 1}
    else:
        scale = pow(point, initial_offset, P) if initial_offset >= 0 else \
            pow(pow(point, P - 2, P), -initial_offset, P)
        vec = {k: ctx.unpack(v).evaluate_mod(point, P) * scale % P
               for k, v in initial.items()}

    def truepow(e: int) -> int:
        if e >= 0:
            return pow(point, e, P)
        return pow(pow(point, P - 2, P), -e, P)

    for idx, step in enumerate(compiled.steps):
        if chunks is not None and idx in chunks:
            chunk = chunks[idx]
            if chunk is None:
                continue
            slot, table = chunk
            rows = table.modular(point)
            scale = truepow(table.lo)
            stride = N ** slot
            ext = N ** table.letters
            new: dict[int, int] = {}
            for key, val in vec.items():
                high, rest = divmod(key, stride * ext)
                code = rest // stride
                base_key = high * ext * stride + key % stride
                for code2, sc in rows.get(code, ()):
                    nk = base_key + code2 * stride
                    new[nk] = (new.get(nk, 0) + val * sc * scale) % P
            vec = {k: v for k, v in new.items() if v}
            continue

        kind, pos = step[0], step[1]
        stride = N ** pos
        n2 = N * N
        new = {}
        if kind == "cup":
            entries = [(i + N * j, w.evaluate_mod(point, P))
                       for (i, j), w in tables.cup[step[2]]]
            for key, val in vec.items():
                high, low = divmod(key, stride)
                base_key = high * n2 * stride + low
                for code, sc in entries:
                    nk = base_key + code * stride
                    new[nk] = (new.get(nk, 0) + val * sc) % P
        elif kind == "cap":
            weights = {i: w.evaluate_mod(point, P)
                       for i, w in tables.cap[step[2]].items()}
            for key, val in vec.items():
                high, rest = divmod(key, stride * n2)
                code = rest // stride
                i, j = code % N, code // N
                if i != j:
                    continue
                nk = high * stride + key % stride
                new[nk] = (new.get(nk, 0) + val * weights[i]) % P
        else:
            table = tables.cross[step[2]]
            by_code = {}
            for (a, b), outs in table.items():
                by_code[a + N * b] = [(a2 + N * b2, p.evaluate_mod(point, P))
                                      for (a2, b2), p in outs]
            for key, val in vec.items():
                high, rest = divmod(key, stride * n2)
                code = rest // stride
                base_key = high * n2 * stride + key % stride
                for code2, sc in by_code.get(code, ()):
                    nk = base_key + code2 * stride
                    new[nk] = (new.get(nk, 0) + val * sc) % P
        vec = {k: v for k, v in new.items() if v}

    extra = set(vec) - {0}
    if extra:
        raise EngineError("modular sweep did not close")
    return vec.get(0, 0) % P


def evaluate_compiled(compiled: CompiledWord, tables: Tables,
                      ctx: PackedContext, width_cap: int | None = None,
                      initial: dict | None = None, initial_offset: int = 0,
                      chunks: dict | None = None, initial_width: int = 0,
                      shadow: bool = True) -> LaurentPoly:
    """Full evaluation: packed sweep, unpack, shadow verification."""
    if width_cap is not None:
        eff = effective_width(compiled, chunks, initial_width)
        if eff > width_cap:
            raise ResourceLimitError(
                f"cut width {eff} exceeds the configured cap {width_cap}")
    vec, offset = run_packed_vector(compiled, tables, ctx, initial,
                                    initial_offset, chunks)
    if set(vec) - {0}:
        raise EngineError("packed sweep did not close")
    poly = ctx.unpack(vec.get(0, mpz(0)), offset)
    if shadow:
        for point in SHADOW_POINTS:
            got = run_modular_scalar(compiled, tables, point, initial,
                                     initial_offset, chunks, ctx)
            if got != poly.evaluate_mod(point, SHADOW_PRIME):
                raise EngineError(
                    f"shadow verification failed at s={point}; packed "
                    f"digits overflowed (bits={ctx.bits})")
    return poly
