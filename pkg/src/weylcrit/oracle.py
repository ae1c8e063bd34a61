"""A brute-force model of the Weyl module Delta(omega) inside tensor space.

Let lambda be the partition coherent with omega and h_1 >= h_2 >= ... the
column heights of its diagram.  The highest vector is the tensor product over
columns of the antisymmetrized words 1 2 ... h_c, and Delta(omega) is the span
of all F e^+ with F in U^-.

Vectors are stored compactly: a key is a tuple of per-column bitmasks, the
bitmask for column c listing the letters of one antisymmetrized column.  This
is the exterior-power form of the same subspace of V^{tensor r};
:meth:`TensorVec.words` expands a vector into full length-r words.  The
divided power E_{a,b}^(m) (letter b becomes a) acts by summing over the
m-element sets of columns containing b but not a, each column contributing the
sign of moving the new letter into sorted position.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from . import weights as W
from .fields import FieldCtx
from .flows import Flow, check_shape, classify
from .hyperalgebra.elements import UElem, lower_pairs
from .hyperalgebra.operators import _ev_h
from .linalg import Echelon, NotInSpan
from .tableaux import coherent_partition, enumerate_standard, mat_of, tableau_less

Key = tuple[int, ...]


class OracleError(ValueError):
    """Invalid oracle request (non-dominant weight, bad token word, ...)."""


def _bits(mask: int) -> list[int]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


@lru_cache(maxsize=None)
def _content(n: int, key: Key) -> tuple[int, ...]:
    c = [0] * n
    for mask in key:
        for k in _bits(mask):
            c[k - 1] += 1
    return tuple(c)


@lru_cache(maxsize=None)
def _column_move(mask: int, a: int, b: int):
    """(new mask, sign) for replacing letter b by a in one column, or None."""
    bb, ba = 1 << (b - 1), 1 << (a - 1)
    if not mask & bb or mask & ba:
        return None
    lo, hi = min(a, b), max(a, b)
    between = mask & (((1 << (hi - 1)) - 1) ^ ((1 << lo) - 1))
    sign = -1 if bin(between).count("1") % 2 else 1
    return (mask ^ bb) | ba, sign


@lru_cache(maxsize=None)
def _act_key(key: Key, a: int, b: int, m: int) -> tuple:
    """E_{a,b}^(m) on one key: tuple of (key, sign)."""
    if m == 0:
        return ((key, 1),)
    moves = [(c, _column_move(mask, a, b)) for c, mask in enumerate(key)]
    eligible = [(c, mv) for c, mv in moves if mv is not None]
    out = []
    for chosen in combinations(eligible, m):
        new = list(key)
        sign = 1
        for c, (mask, s) in chosen:
            new[c] = mask
            sign *= s
        out.append((tuple(new), sign))
    return tuple(out)


class TensorVec:
    """Sparse vector over column-wedge keys with coefficients in ``field``."""

    __slots__ = ("field", "heights", "terms")

    def __init__(self, field: FieldCtx, heights: tuple, terms: Mapping | None = None):
        self.field = field
        self.heights = tuple(heights)
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = field(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def _raw(cls, field, heights, terms):
        v = object.__new__(cls)
        v.field = field
        v.heights = heights
        v.terms = terms
        return v

    def _like(self, terms):
        return TensorVec._raw(self.field, self.heights, terms)

    def _check(self, other):
        if self.field != other.field or self.heights != other.heights:
            raise OracleError("vectors live in different modules")

    def __add__(self, other: "TensorVec") -> "TensorVec":
        self._check(other)
        f = self.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            x = f(out.get(k, 0) + c)
            if x:
                out[k] = x
            else:
                out.pop(k, None)
        return self._like(out)

    def __neg__(self):
        f = self.field
        return self._like({k: f(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorVec":
        f = self.field
        c = f(c)
        if not c:
            return self._like({})
        return self._like({k: f(x * c) for k, x in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, TensorVec):
            return NotImplemented
        return self.field == other.field and self.heights == other.heights and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"TensorVec({len(self.terms)} terms, heights={self.heights}, {self.field})"

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def n_letters(self) -> int:
        return sum(self.heights)

    def contents(self, n: int) -> set:
        return {_content(n, k) for k in self.terms}

    def split_contents(self, n: int) -> dict:
        groups = defaultdict(dict)
        for k, c in self.terms.items():
            groups[_content(n, k)][k] = c
        return {w: self._like(t) for w, t in groups.items()}

    def words(self) -> dict[tuple[int, ...], object]:
        """Expand into words of length r (columns left to right, top to bottom)."""
        f = self.field
        out = defaultdict(int)
        for key, c in self.terms.items():
            partial = {(): c}
            for mask in key:
                letters = _bits(mask)
                col = []
                for perm in permutations(range(len(letters))):
                    col.append((tuple(letters[p] for p in perm), _perm_parity(perm)))
                partial = {w + cw: x * s for w, x in partial.items() for cw, s in col}
            for w, x in partial.items():
                out[w] += x
        return {w: f(x) for w, x in out.items() if f(x)}


def _perm_parity(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def act(a: int, b: int, m: int, v: TensorVec) -> TensorVec:
    """The divided power E_{a,b}^(m) (sending letter b to letter a)."""
    if m < 0:
        return v._like({})
    if m == 0:
        return v
    f = v.field
    out = defaultdict(int)
    for key, c in v.terms.items():
        for k2, s in _act_key(key, a, b, m):
            out[k2] += s * c
    return v._like({k: x for k, x in ((k, f(x)) for k, x in out.items()) if x})


def act_lower(j: int, i: int, m: int, v: TensorVec) -> TensorVec:
    """E_{j,i}^(m), j > i."""
    if not i < j:
        raise OracleError(f"E({j},{i}) is not a lowering operator")
    return act(j, i, m, v)


def act_raise(i: int, j: int, m: int, v: TensorVec) -> TensorVec:
    """E_{i,j}^(m) = X_{alpha(i,j), m}, i < j."""
    if not i < j:
        raise OracleError(f"E({i},{j}) is not a raising operator")
    return act(i, j, m, v)


def act_h(l: int, k: int, v: TensorVec, n: int) -> TensorVec:
    """binom(H_l, k) acting diagonally on weight vectors."""
    f = v.field
    out = {}
    for key, c in v.terms.items():
        cnt = _content(n, key)
        x = f(c * _ev_h((cnt[l - 1] - cnt[l],), (k,)))
        if x:
            out[key] = x
    return v._like(out)


class WeylContext:
    """Delta(omega) for dominant omega over ``field``, with cached bases."""

    def __init__(self, n: int, omega: Sequence[int], field: FieldCtx):
        omega = tuple(omega)
        if len(omega) != n - 1:
            raise OracleError(f"weight {omega} needs {n - 1} coordinates")
        if not W.is_dominant(omega):
            raise OracleError(f"weight {omega} is not dominant")
        self.n = n
        self.omega = omega
        self.field = field
        self.lam = coherent_partition(omega)
        self.r = sum(self.lam)
        ncols = self.lam[0] if self.lam else 0
        self.heights = tuple(sum(1 for x in self.lam if x > c) for c in range(ncols))
        self.highest_key = tuple((1 << h) - 1 for h in self.heights)
        self._mono = {}
        self._basis = None
        self._echelons = None

    def __repr__(self):
        return f"WeylContext(n={self.n}, omega={self.omega}, {self.field})"

    def vec(self, terms: Mapping | None = None) -> TensorVec:
        return TensorVec(self.field, self.heights, terms)

    def zero(self) -> TensorVec:
        return TensorVec._raw(self.field, self.heights, {})

    def highest(self) -> TensorVec:
        return TensorVec._raw(self.field, self.heights, {self.highest_key: 1})

    # U^{-,0} action ------------------------------------------------------

    def monomial_vector(self, N: tuple) -> TensorVec:
        """F^(N) e^+, factors applied right to left in canonical order."""
        N = tuple(N)
        hit = self._mono.get(N)
        if hit is not None:
            return hit
        pairs = lower_pairs(self.n)
        first = next((k for k, x in enumerate(N) if x), None)
        if first is None:
            v = self.highest()
        else:
            a, b = pairs[first]
            rest = list(N)
            rest[first] = 0
            v = act(b, a, N[first], self.monomial_vector(tuple(rest)))
        self._mono[N] = v
        return v

    def vector_of(self, F: UElem) -> TensorVec:
        if F.n != self.n or F.field != self.field:
            raise OracleError("element and module use different n or field")
        f = self.field
        acc = defaultdict(int)
        for (N, H), c in F.terms.items():
            scalar = c * _ev_h(self.omega, H)
            if not f(scalar):
                continue
            for k, x in self.monomial_vector(N).terms.items():
                acc[k] += scalar * x
        return self.vec(acc)

    # standard basis ----------------------------------------------------------

    def standard_basis(self) -> list[tuple[tuple, TensorVec]]:
        """(T, F_T e^+) over standard lambda-tableaux T."""
        if self._basis is None:
            self._basis = [
                (T, self.monomial_vector(mat_of(T))) for T in enumerate_standard(self.lam)
            ]
        return self._basis

    def _weight_echelons(self):
        if self._echelons is None:
            groups = defaultdict(list)
            for pos, (T, v) in enumerate(self.standard_basis()):
                (content,) = v.contents(self.n) if v else {None}
                groups[content].append(pos)
            echs = {}
            for content, positions in groups.items():
                ech = Echelon(self.field)
                for pos in positions:
                    if not ech.add(self.standard_basis()[pos][1].terms):
                        raise OracleError(f"standard vectors dependent at weight {content}")
                echs[content] = (ech, positions)
            self._echelons = echs
        return self._echelons

    @property
    def dim(self) -> int:
        return len(self.standard_basis())

    def coords(self, v: TensorVec) -> dict[int, object]:
        """Coefficients of ``v`` over the standard basis, keyed by basis position."""
        out = {}
        echs = self._weight_echelons()
        for content, part in v.split_contents(self.n).items():
            if content not in echs:
                raise NotInSpan(f"weight {content} does not occur in {self}")
            ech, positions = echs[content]
            for g, c in ech.coords(part.terms).items():
                out[positions[g]] = c
        return out

    def tableau_coords(self, v: TensorVec) -> dict[tuple, object]:
        basis = self.standard_basis()
        return {basis[pos][0]: c for pos, c in self.coords(v).items()}

    def weight_space(self, content: tuple) -> list[tuple[tuple, TensorVec]]:
        echs = self._weight_echelons()
        if content not in echs:
            return []
        basis = self.standard_basis()
        return [basis[pos] for pos in echs[content][1]]

    def contents(self) -> list:
        return sorted(self._weight_echelons())

    def content_of(self, omega_shift) -> tuple:
        """Letter content of the weight omega + shift (shift in fundamental coords)."""
        target = W.add(self.omega, omega_shift)
        return content_for_weight(self.lam, self.omega, target)


def feasible_matrices(ctx: WeylContext) -> list[tuple[int, ...]]:
    """Every N whose F^(N) e^+ can be nonzero by letter counting (a superset)."""
    n = ctx.n
    pairs = lower_pairs(n)
    ncols = len(ctx.heights)
    out = []

    def rec(a, N, incoming):
        # Rows a = 1..n-1 in turn; letter a is available lam_a + incoming[a] times.
        if a == n:
            out.append(tuple(N[p] for p in pairs))
            return
        avail = ctx.lam[a - 1] + incoming[a]
        targets = list(range(a + 1, n + 1))

        def split(k, left):
            if k == len(targets):
                rec(a + 1, N, incoming)
                return
            b = targets[k]
            for m in range(min(left, ncols) + 1):
                N[(a, b)] = m
                incoming[b] += m
                split(k + 1, left - m)
                incoming[b] -= m
            N[(a, b)] = 0

        split(0, avail)

    rec(1, {p: 0 for p in pairs}, defaultdict(int))
    return out


def monomial_rank(ctx: WeylContext) -> int:
    """Rank of all F^(N) e^+, computed without the tableau basis."""
    echs = defaultdict(lambda: Echelon(ctx.field))
    total = 0
    for N in feasible_matrices(ctx):
        v = ctx.monomial_vector(N)
        if not v:
            continue
        (content,) = v.contents(ctx.n)
        total += echs[content].add(v.terms)
    return total


def content_for_weight(lam, omega, target) -> tuple | None:
    """Content mu with |mu| = |lam| whose fundamental coordinates equal ``target``."""
    n = len(lam)
    r = sum(lam)
    # mu_l - mu_{l+1} = target_l determines mu up to a constant shift.
    offs = [0]
    for t in target:
        offs.append(offs[-1] - t)
    total = sum(offs)
    if (r - total) % n:
        return None
    base = (r - total) // n
    mu = tuple(base + o for o in offs)
    if min(mu) < 0:
        return None
    return mu


@lru_cache(maxsize=None)
def weyl_context(n: int, omega: tuple, field: FieldCtx) -> WeylContext:
    """Shared, cached context for Delta(omega)."""
    return WeylContext(n, tuple(omega), field)


def highest_vector(ctx: WeylContext) -> TensorVec:
    return ctx.highest()


def vector_of(F: UElem, ctx: WeylContext) -> TensorVec:
    return ctx.vector_of(F)


def standard_basis(ctx: WeylContext):
    return ctx.standard_basis()


def coords(v: TensorVec, ctx: WeylContext) -> dict:
    return ctx.tableau_coords(v)


# --- descent maps ---------------------------------------------------------


def descend(ctx: WeylContext, delta: Sequence[int], v: TensorVec) -> TensorVec:
    """d^omega_delta(v) in Delta(omega - delta), pinned by e^+ -> e^+."""
    delta = tuple(delta)
    if not W.is_dominant(delta):
        raise OracleError(f"delta = {delta} is not dominant")
    target = W.sub(ctx.omega, delta)
    if not W.is_dominant(target):
        raise OracleError(f"omega - delta = {target} is not dominant")
    if v.heights != ctx.heights or v.field != ctx.field:
        raise OracleError("vector does not belong to this module")
    low = weyl_context(ctx.n, target, ctx.field)
    basis = ctx.standard_basis()
    f = ctx.field
    acc = defaultdict(int)
    for pos, c in ctx.coords(v).items():
        w = low.monomial_vector(mat_of(basis[pos][0]))
        for k, x in w.terms.items():
            acc[k] += c * x
    return low.vec({k: f(x) for k, x in acc.items()})


def d_map(ctx: WeylContext, i: int, v: TensorVec) -> TensorVec:
    """d^omega_{omega_i}(v)."""
    return descend(ctx, W.fundamental(ctx.n, i), v)


# --- primitivity -------------------------------------------------------------


def is_simply_primitive(v: TensorVec, ctx: WeylContext) -> bool:
    return all(not act(l, l + 1, 1, v) for l in range(1, ctx.n))


def is_primitive(v: TensorVec, ctx: WeylContext) -> bool:
    for l in range(1, ctx.n):
        for m in range(1, ctx.r + 1):
            if act(l, l + 1, m, v):
                return False
    return True


def _kernel_vectors(ctx: WeylContext, basis, images) -> list[TensorVec]:
    ech = Echelon(ctx.field)
    for img in images:
        ech.add(img)
    out = []
    for combo in ech.kernel:
        acc = ctx.zero()
        for g, c in combo.items():
            acc = acc + basis[g][1].scale(c)
        out.append(acc)
    return out


def primitive_space(ctx: WeylContext, mu: Sequence[int]) -> list[TensorVec]:
    """Basis of the primitive vectors of fundamental weight ``mu``."""
    content = content_for_weight(ctx.lam, ctx.omega, tuple(mu))
    space = ctx.weight_space(content) if content is not None else []
    images = []
    for T, v in space:
        img = {}
        for l in range(1, ctx.n):
            for m in range(1, ctx.r + 1):
                for k, c in act(l, l + 1, m, v).terms.items():
                    img[(l, m, k)] = c
        images.append(img)
    return _kernel_vectors(ctx, space, images)


def descend_raise_kernel(ctx: WeylContext) -> list[TensorVec]:
    """Joint kernel of every valid d^omega_{omega_i} and every simple raise E_{l,l+1}."""
    out = []
    valid = [i for i in range(1, ctx.n) if ctx.omega[i - 1] > 0]
    for content in ctx.contents():
        space = ctx.weight_space(content)
        images = []
        for T, v in space:
            img = {}
            for i in valid:
                for k, c in d_map(ctx, i, v).terms.items():
                    img[("d", i, k)] = c
            for l in range(1, ctx.n):
                for k, c in act(l, l + 1, 1, v).terms.items():
                    img[("e", l, k)] = c
            images.append(img)
        out.extend(_kernel_vectors(ctx, space, images))
    return out


# --- words with one descent ---------------------------------------------------


def apply_word(tokens, v: TensorVec, ctx: WeylContext, delta) -> TensorVec:
    """Apply tokens right to left on Delta(omega) + Delta(omega - delta).

    Tokens are ``("raise", i, j, m)`` or ``("D",)``.  D maps the first summand
    by the descent map and kills the second.  Returns the second summand.
    """
    tokens = list(tokens)
    if sum(1 for t in tokens if t[0] == "D") != 1:
        raise OracleError("word must contain exactly one D token")
    delta = tuple(delta)
    low = weyl_context(ctx.n, W.sub(ctx.omega, delta), ctx.field)
    top, bot = v, low.zero()
    for tok in reversed(tokens):
        if tok[0] == "D":
            top, bot = ctx.zero(), descend(ctx, delta, top)
        elif tok[0] == "raise":
            _, i, j, m = tok
            top = act_raise(i, j, m, top)
            bot = act_raise(i, j, m, bot)
        else:
            raise OracleError(f"unknown token {tok!r}")
    return bot


def canonical_interleavings(i: int, a: Sequence[int], b: Sequence[int]) -> list[tuple]:
    """Per j = q, ..., 1: the run a_j, ..., i-1 followed by b_j - 1, ..., i+1."""
    out = []
    for aj, bj in zip(reversed(a), reversed(b)):
        out.append(tuple(range(aj, i)) + tuple(range(bj - 1, i, -1)))
    return out


def z_op(ctx: WeylContext, i: int, a: Sequence[int], b: Sequence[int], v: TensorVec,
         interleavings: Sequence[Sequence[int]] | None = None) -> TensorVec:
    """The right-normed commutator [X_{s_1}, [X_{s_2}, ..., [X_{s_k}, D]]] applied to v.

    The word s is s_q, i, s_{q-1}, i, ..., s_1, i built from ``interleavings``
    (canonical ones by default).  Expands into 2^k products L_S D R_{S^c}.
    """
    a, b = check_shape(ctx.n, i, a, b)
    if not 1 <= i < ctx.n or ctx.omega[i - 1] < 1:
        raise OracleError(f"omega - omega_{i} is not dominant")
    if interleavings is None:
        interleavings = canonical_interleavings(i, a, b)
    word = []
    for seq in interleavings:
        word.extend(seq)
        word.append(i)
    k = len(word)
    delta = W.fundamental(ctx.n, i)
    low = weyl_context(ctx.n, W.sub(ctx.omega, delta), ctx.field)
    total = low.zero()
    right_cache = {}
    for mask in range(1 << k):
        left = [word[t] for t in range(k) if mask >> t & 1]
        right = tuple(t for t in range(k) if not mask >> t & 1)
        # Complement indices act first, in increasing index order.
        if right not in right_cache:
            w = v
            for t in right:
                w = act(word[t], word[t] + 1, 1, w)
                if not w:
                    break
            right_cache[right] = descend(ctx, delta, w) if w else low.zero()
        w = right_cache[right]
        for l in reversed(left):
            if not w:
                break
            w = act(l, l + 1, 1, w)
        if not w:
            continue
        sign = -1 if (k - len(left)) % 2 else 1
        total = total + w.scale(sign)
    return total


def minimal_tableau(tableaux: Iterable[tuple]) -> tuple:
    """A minimal element (no other is smaller), ties broken by lexicographic rows."""
    xs = sorted(tableaux)
    for T in xs:
        if not any(tableau_less(S, T) for S in xs if S != T):
            return T
    raise OracleError("partial order has no minimal element")


def raise_certificate(ctx: WeylContext, v: TensorVec):
    """(i, a, b) from the first column of a minimal support tableau of ``v``."""
    if not v:
        raise OracleError("zero vector has no certificate")
    if not any(ctx.omega):
        raise OracleError("omega = 0 admits no descent")
    T = minimal_tableau(ctx.tableau_coords(v))
    i = max(l for l in range(1, ctx.n) if ctx.omega[l - 1] > 0)
    i0 = next((s for s in range(1, i + 1) if s < T[s - 1][0]), None)
    edges = [] if i0 is None else [(s, T[s - 1][0]) for s in range(i0, i + 1)]
    c = classify(Flow(ctx.n, edges))
    return i, c.sources, c.sinks

