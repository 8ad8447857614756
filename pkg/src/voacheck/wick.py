"""Normally ordered composite free fields and Wick's theorem.

A :class:`CompositeField` is a Scalar-weighted sum of normally ordered
monomials ``:d^{k1}F1 ... d^{kr}Fr:``; a monomial is a sorted tuple of
``(field, k)`` factors.  Because all five fields are free, normal ordering is
graded-commutative, so the monomials form a basis and equality of fields is
equality of canonical dictionaries.

The OPE of two composites is computed by summing over every set of pairwise
contractions (with fermionic signs) and Taylor-expanding the uncontracted
factors of the left field around w.
"""

from __future__ import annotations

import contextlib
from functools import lru_cache
from itertools import combinations
from fractions import Fraction
from math import factorial

from . import freefields as ff
from .freefields import ANNIHILATES_FROM, FERMIONIC, FIELD_ORDER, WEIGHT, FockState
from .scalars import ONE, ZERO, Scalar, as_scalar

# Ordered pair (F at z, G at w) -> (kappa, pole): F(z) G(w) ~ kappa / (z-w)^pole.
# The beta-gamma sign is the usual trap; it is fixed here and nowhere else.
DEFAULT_CONTRACTIONS = {
    ("b", "c"): (1, 1),
    ("c", "b"): (1, 1),
    ("beta", "gamma"): (-1, 1),
    ("gamma", "beta"): (1, 1),
    ("j", "j"): (1, 2),
}

# Negative control for the verification harness: b c with the wrong sign.
CORRUPTED_CONTRACTIONS = {**DEFAULT_CONTRACTIONS, ("b", "c"): (-1, 1), ("c", "b"): (-1, 1)}

_contractions = dict(DEFAULT_CONTRACTIONS)


@contextlib.contextmanager
def contraction_table(table):
    """Temporarily replace the contraction table (clears OPE caches)."""
    global _contractions
    old = _contractions
    _contractions = dict(table)
    _clear_caches()
    try:
        yield
    finally:
        _contractions = old
        _clear_caches()


_DEPENDENT_CACHES = []


def register_ope_cache(fn):
    """Mark an lru-cached function whose results depend on the contraction table."""
    _DEPENDENT_CACHES.append(fn)
    return fn


def _clear_caches():
    _ope_monomials.cache_clear()
    for fn in _DEPENDENT_CACHES:
        fn.cache_clear()


def canonical(factors):
    """Sort factors into canonical order; return ``(sign, monomial)`` or ``(0, None)``."""
    facs = list(factors)
    sign = 1
    # insertion sort, tracking fermion transpositions
    for i in range(1, len(facs)):
        j = i
        while j > 0 and _fkey(facs[j - 1]) > _fkey(facs[j]):
            if facs[j - 1][0] in FERMIONIC and facs[j][0] in FERMIONIC:
                sign = -sign
            facs[j - 1], facs[j] = facs[j], facs[j - 1]
            j -= 1
    for a, b in zip(facs, facs[1:]):
        if a == b and a[0] in FERMIONIC:
            return 0, None
    return sign, tuple(facs)


def _fkey(f):
    return (FIELD_ORDER[f[0]], f[1])


class CompositeField:
    """Scalar-weighted sum of normally ordered free-field monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms: dict = {}
        for mono, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                self.terms[mono] = self.terms.get(mono, ZERO) + c
                if not self.terms[mono]:
                    del self.terms[mono]
        self._hash = None

    @classmethod
    def field(cls, name: str, k: int = 0) -> "CompositeField":
        return cls({((name, k),): ONE})

    @classmethod
    def constant(cls, c=1) -> "CompositeField":
        return cls({(): c})

    @classmethod
    def monomial(cls, factors, coeff=1) -> "CompositeField":
        sign, mono = canonical(factors)
        if not sign:
            return cls()
        return cls({mono: as_scalar(coeff) * sign})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, CompositeField) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return CompositeField(out)

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, s):
        s = as_scalar(s)
        return CompositeField({m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def weights(self) -> set:
        return {sum(WEIGHT[f] + k for f, k in m) for m in self.terms}

    @property
    def weight(self) -> int:
        w = self.weights()
        if len(w) > 1:
            raise ValueError(f"field is not homogeneous (weights {sorted(w)})")
        return w.pop() if w else 0

    @property
    def parity(self) -> int:
        ps = {sum(1 for f, _ in m if f in FERMIONIC) % 2 for m in self.terms}
        if len(ps) > 1:
            raise ValueError("field has mixed statistics")
        return ps.pop() if ps else 0

    def fields_used(self) -> set:
        return {f for m in self.terms for f, _ in m}

    def coefficient(self, factors) -> Scalar:
        sign, mono = canonical(factors)
        if not sign:
            return ZERO
        return self.terms.get(mono, ZERO) * sign

    def render(self) -> str:
        from .parser import render_field

        return render_field(self)

    def __repr__(self):
        return f"CompositeField({self.render()})"


def free_product(A: CompositeField, B: CompositeField) -> CompositeField:
    """Concatenate normally ordered monomials (no contractions)."""
    out: dict = {}
    for ma, ca in A.terms.items():
        for mb, cb in B.terms.items():
            sign, mono = canonical(ma + mb)
            if sign:
                out[mono] = out.get(mono, ZERO) + ca * cb * sign
    return CompositeField(out)


# ---------------------------------------------------------------------------
# Wick's theorem


def _contraction(fa, fb):
    """Coefficient and pole order of <d^a F(z) d^b G(w)>, or None."""
    (F, a), (G, b) = fa, fb
    entry = _contractions.get((F, G))
    if entry is None:
        return None
    kappa, p = entry
    coef = kappa * (-1) ** a * factorial(p + a + b - 1) // factorial(p - 1)
    return coef, p + a + b


def _matchings(ma, mb):
    """All partial matchings between factors of ma and mb with nonzero contraction."""
    na = len(ma)

    def rec(i, used):
        if i == na:
            yield []
            return
        yield from rec(i + 1, used)
        for j in range(len(mb)):
            if j in used:
                continue
            c = _contraction(ma[i], mb[j])
            if c is None:
                continue
            for rest in rec(i + 1, used | {j}):
                yield [(i, j, c[0], c[1])] + rest

    yield from rec(0, frozenset())


def _perm_sign(seq, ferm):
    """Parity of the permutation ``seq`` restricted to fermionic positions."""
    fs = [x for x in seq if ferm[x]]
    inv = 0
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if fs[i] > fs[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _ope_monomials(ma, mb, min_order):
    """Wick expansion of :ma:(z) :mb:(w); returns {order r >= min_order: {mono: coeff}}."""
    na = len(ma)
    ferm = [f in FERMIONIC for f, _ in ma + mb]
    out: dict = {}
    for matching in _matchings(ma, mb):
        coef = 1
        P = 0
        seq = []
        used_a, used_b = set(), set()
        for i, j, c, p in matching:
            coef *= c
            P += p
            seq += [i, na + j]
            used_a.add(i)
            used_b.add(j)
        rest_a = [i for i in range(na) if i not in used_a]
        rest_b = [j for j in range(len(mb)) if j not in used_b]
        seq += rest_a + [na + j for j in rest_b]
        sign = _perm_sign(seq, ferm)
        for r in range(min_order, P + 1):
            t_total = P - r
            for ts in _compositions(t_total, len(rest_a)):
                denom = 1
                for t in ts:
                    denom *= factorial(t)
                factors = [(ma[i][0], ma[i][1] + t) for i, t in zip(rest_a, ts)] + [mb[j] for j in rest_b]
                s2, mono = canonical(factors)
                if not s2:
                    continue
                val = Scalar(coef * sign * s2) / denom if denom > 1 else as_scalar(coef * sign * s2)
                bucket = out.setdefault(r, {})
                bucket[mono] = bucket.get(mono, ZERO) + val
    return {r: {m: c for m, c in d.items() if c} for r, d in out.items()}


def ope_full(A: CompositeField, B: CompositeField, min_order: int = 0) -> dict:
    """Coefficients of (z-w)^{-r} for r >= min_order in A(z)B(w), as CompositeFields."""
    acc: dict = {}
    for ma, ca in A.terms.items():
        for mb, cb in B.terms.items():
            for r, bucket in _ope_monomials(ma, mb, min_order).items():
                d = acc.setdefault(r, {})
                for mono, c in bucket.items():
                    d[mono] = d.get(mono, ZERO) + ca * cb * c
    result = {}
    for r, d in acc.items():
        f = CompositeField(d)
        if f:
            result[r] = f
    return result


class OpeResult:
    """Singular part of an OPE: pole order -> CompositeField at w."""

    def __init__(self, poles):
        self.poles = {r: f for r, f in poles.items() if f}

    def __eq__(self, other):
        return isinstance(other, OpeResult) and self.poles == other.poles

    def __getitem__(self, r):
        return self.poles.get(r, CompositeField())

    def max_order(self) -> int:
        return max(self.poles, default=0)

    def render(self) -> str:
        if not self.poles:
            return "0"
        return "\n".join(f"(z-w)^-{r}: {self.poles[r].render()}" for r in sorted(self.poles, reverse=True))

    def __repr__(self):
        return f"OpeResult({self.poles!r})"


def ope_singular(A: CompositeField, B: CompositeField) -> OpeResult:
    return OpeResult(ope_full(A, B, min_order=1))


def normal_product(A: CompositeField, B: CompositeField) -> CompositeField:
    """:A B:(w), the (z-w)^0 coefficient of the Wick expansion of A(z)B(w)."""
    return ope_full(A, B, min_order=0).get(0, CompositeField())


def nested_normal_product(*fields: CompositeField) -> CompositeField:
    """Right-nested :A1 :A2 ... An::."""
    if not fields:
        return CompositeField.constant(1)
    out = fields[-1]
    for f in reversed(fields[:-1]):
        out = normal_product(f, out)
    return out


def derive(A: CompositeField, times: int = 1) -> CompositeField:
    for _ in range(times):
        out: dict = {}
        for mono, c in A.terms.items():
            for i, (f, k) in enumerate(mono):
                sign, m2 = canonical(mono[:i] + ((f, k + 1),) + mono[i + 1 :])
                if sign:
                    out[m2] = out.get(m2, ZERO) + c * sign
        A = CompositeField(out)
    return A


# ---------------------------------------------------------------------------
# modes acting on Fock states


def _dcoef(field: str, k: int, n: int) -> int:
    """Coefficient of F(n) in the z^{-n-h-k} term of d^k F(z)."""
    h = WEIGHT[field]
    out = 1
    for t in range(k):
        out *= -n - h - t
    return out


def _apply_raw(mode, state: dict) -> dict:
    out: dict = {}
    for key, c in state.items():
        for k2, c2 in ff.apply_mode_to_key(mode, key):
            v = out.get(k2, ZERO) + c * c2
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
    return out


def _level_of(state: dict) -> int:
    return max((ff.monomial_level(m) for _, m in state), default=0)


@lru_cache(maxsize=None)
def _monomial_mode_on_key(mono, N: int, key) -> tuple:
    """Mode N of the normally ordered monomial acting on one basis key."""
    r = len(mono)
    if r == 0:
        return ((key, ONE),) if N == 0 else ()
    ferm = [f in FERMIONIC for f, _ in mono]
    out: dict = {}
    start = {key: ONE}
    L0 = ff.monomial_level(key[1])
    for size in range(r + 1):
        for ann in combinations(range(r), size):
            cre = [i for i in range(r) if i not in ann]
            # normal-ordering sign: creators (in order) then annihilators (in order)
            sign = _perm_sign(cre + list(ann), ferm)
            cmax = [ANNIHILATES_FROM[mono[i][0]] - 1 for i in cre]
            # annihilators act right to left
            for ann_modes, state in _annihilator_paths(mono, list(reversed(ann)), start, L0):
                SA = sum(ann_modes)
                R = N - SA
                for cre_modes in _creator_modes(R, cmax):
                    coef = sign
                    for i, n in zip(ann[::-1], ann_modes):
                        coef *= _dcoef(mono[i][0], mono[i][1], n)
                    for i, n in zip(cre, cre_modes):
                        coef *= _dcoef(mono[i][0], mono[i][1], n)
                    if not coef:
                        continue
                    st = state
                    for i, n in zip(reversed(cre), reversed(cre_modes)):
                        st = _apply_raw((mono[i][0], n), st)
                        if not st:
                            break
                    for k2, c2 in st.items():
                        v = out.get(k2, ZERO) + c2 * coef
                        if v:
                            out[k2] = v
                        else:
                            out.pop(k2, None)
    return tuple(out.items())


def _annihilator_paths(mono, order, state, level):
    """Yield (modes, resulting state) for annihilators applied in ``order``."""
    if not order:
        yield (), state
        return
    i = order[0]
    f = mono[i][0]
    for n in range(ANNIHILATES_FROM[f], level + 1):
        st = _apply_raw((f, n), state)
        if not st:
            continue
        for rest, st2 in _annihilator_paths(mono, order[1:], st, level - n):
            yield (n,) + rest, st2


def _creator_modes(total, cmax):
    """Tuples n_i <= cmax_i with sum total."""
    if not cmax:
        if total == 0:
            yield ()
        return
    rest_max = sum(cmax[1:])
    hi = cmax[0]
    lo = total - rest_max
    for n in range(lo, hi + 1):
        for rest in _creator_modes(total - n, cmax[1:]):
            yield (n,) + rest


def mode_action(A: CompositeField, n: int, v: FockState) -> FockState:
    """A(n) v where A(z) = sum_n A(n) z^{-n-h}."""
    if len(A.weights()) > 1:
        raise ValueError("mode_action needs a field of definite conformal weight")
    out: dict = {}
    for key, c in v.terms.items():
        for mono, cm in A.terms.items():
            for k2, c2 in _monomial_mode_on_key(mono, n, key):
                val = out.get(k2, ZERO) + c * cm * c2
                if val:
                    out[k2] = val
                else:
                    out.pop(k2, None)
    return FockState(out)


def supercommutator_on(A: CompositeField, m: int, B: CompositeField, n: int, v: FockState) -> FockState:
    """[A(m), B(n)} v computed directly on the state."""
    ab = mode_action(A, m, mode_action(B, n, v))
    ba = mode_action(B, n, mode_action(A, m, v))
    if A.parity and B.parity:
        return ab + ba
    return ab - ba


def gbinom(x: int, k: int) -> Scalar:
    """Generalized binomial coefficient for integer x and k >= 0."""
    if k < 0:
        return ZERO
    num = 1
    for t in range(k):
        num *= x - t
    return Scalar(num) / factorial(k) if k > 1 else as_scalar(num)


class ModeSum:
    """Finite sum of ``coeff * C(mode)`` for composite fields C."""

    def __init__(self, terms):
        self.terms = [(as_scalar(c), f, n) for c, f, n in terms if c and f]

    def apply(self, v: FockState) -> FockState:
        out = FockState()
        for c, f, n in self.terms:
            out = out + mode_action(f, n, v) * c
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c.text(compact=True)}) * [{f.render()}]({n})" for c, f, n in self.terms)

    def __repr__(self):
        return f"ModeSum({self.render()})"


def commutator_via_ope(A: CompositeField, B: CompositeField, m: int, n: int) -> ModeSum:
    """[A(m), B(n)} = sum_r binom(m + h_A - 1, r - 1) C_r(m + n)."""
    hA = A.weight
    ope = ope_singular(A, B)
    return ModeSum((gbinom(m + hA - 1, r - 1), C, m + n) for r, C in sorted(ope.poles.items()))


# ---------------------------------------------------------------------------
# the generators used throughout

def bc_monomial(i: int, j: int) -> CompositeField:
    """:d^i b d^j c:"""
    return CompositeField.monomial([("b", i), ("c", j)])


T_FIELD = bc_monomial(1, 0)
WT_FIELD = (bc_monomial(2, 0) - bc_monomial(1, 1)) * Fraction(1, 2)
