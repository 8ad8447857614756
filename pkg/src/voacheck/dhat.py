"""The central extension of differential operators on the circle.

Elements are finite sums ``t^r f_r(D) + c*C`` with ``D = t d/dt``.  Polynomials
in D are tuples of Scalar coefficients in ascending degree.  The bracket is

    [t^r f(D), t^s g(D)] = t^{r+s} (f(D+s) g(D) - f(D) g(D+r)) + Psi(f, g) C

with the cocycle Psi supported on r + s = 0.

The free-field realization on the beta-gamma Fock space sends
``J^l_k = -t^k (D)_l`` to the modes of ``:gamma d^l beta:`` (plus a constant
for nonzero twist); the central element then acts by -1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import freefields as ff
from . import wick
from .freefields import FockState
from .scalars import ONE, ZERO, Scalar, as_scalar

# ---------------------------------------------------------------------------
# polynomials in D


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def padd(f, g):
    n = max(len(f), len(g))
    return _trim((f[i] if i < len(f) else ZERO) + (g[i] if i < len(g) else ZERO) for i in range(n))


def pscale(f, c):
    c = as_scalar(c)
    return _trim(x * c for x in f)


def pmul(f, g):
    if not f or not g:
        return ()
    out = [ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def pshift(f, s):
    """f(D + s)."""
    out = [ZERO] * len(f)
    for d, a in enumerate(f):
        if a:
            for k in range(d + 1):
                out[k] = out[k] + a * comb(d, k) * s ** (d - k)
    return _trim(out)


def peval(f, x) -> Scalar:
    acc = ZERO
    for a in reversed(f):
        acc = acc * x + a
    return acc


def falling(l: int):
    """(D)_l = D (D-1) ... (D-l+1)."""
    p = (ONE,)
    for t in range(l):
        p = pmul(p, (as_scalar(-t), ONE))
    return p


def to_falling_basis(f) -> list:
    """Coefficients a_l with f = sum a_l (D)_l."""
    rest = tuple(f)
    out = [ZERO] * len(rest)
    for l in range(len(rest) - 1, -1, -1):
        if l < len(rest) and rest[l]:
            a = rest[l]
            out[l] = a
            rest = padd(rest, pscale(falling(l), -a))
    return out


# ---------------------------------------------------------------------------
# elements and the bracket


class DOElement:
    """``sum_r t^r f_r(D) + central * C``."""

    __slots__ = ("terms", "central")

    def __init__(self, terms=None, central=0):
        self.terms = {r: _trim(as_scalar(x) for x in f) for r, f in (terms or {}).items()}
        self.terms = {r: f for r, f in self.terms.items() if f}
        self.central = as_scalar(central)

    @classmethod
    def J(cls, l: int, k: int) -> "DOElement":
        return cls({k: pscale(falling(l), -1)})

    @classmethod
    def L(cls, l: int, k: int) -> "DOElement":
        return cls({k: tuple([ZERO] * l + [-ONE])})

    @classmethod
    def C(cls) -> "DOElement":
        return cls(central=1)

    def __eq__(self, other):
        return isinstance(other, DOElement) and self.terms == other.terms and self.central == other.central

    def __bool__(self):
        return bool(self.terms) or bool(self.central)

    def __add__(self, other):
        terms = dict(self.terms)
        for r, f in other.terms.items():
            terms[r] = padd(terms.get(r, ()), f)
        return DOElement(terms, self.central + other.central)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return DOElement({r: pscale(f, c) for r, f in self.terms.items()}, self.central * as_scalar(c))

    __rmul__ = __mul__

    def degree(self) -> int:
        return max((len(f) - 1 for f in self.terms.values()), default=-1)

    def render(self) -> str:
        parts = []
        for r in sorted(self.terms):
            poly = " + ".join(f"({a.text(compact=True)})D^{d}" for d, a in enumerate(self.terms[r]) if a)
            parts.append(f"t^{r}[{poly}]")
        if self.central:
            parts.append(f"({self.central.text(compact=True)})C")
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"DOElement({self.render()})"


def cocycle(r: int, f, s: int, g) -> Scalar:
    if r + s != 0:
        return ZERO
    if r >= 0:
        acc = ZERO
        for j in range(-r, 0):
            acc = acc + peval(f, j) * peval(g, j + r)
        return acc
    return -cocycle(s, g, r, f)


def dhat_bracket(x: DOElement, y: DOElement) -> DOElement:
    terms: dict = {}
    central = ZERO
    for r, f in x.terms.items():
        for s, g in y.terms.items():
            p = padd(pmul(pshift(f, s), g), pscale(pmul(f, pshift(g, r)), -1))
            if p:
                terms[r + s] = padd(terms.get(r + s, ()), p)
            central = central + cocycle(r, f, s, g)
    return DOElement(terms, central)


def _stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind: (D)_n = sum s(n,k) D^k."""
    return int(falling(n)[k]) if k < n + 1 else 0


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def basis_convert(l: int, k: int, direction: str = "J->L") -> dict:
    """Expand J^l_k in the L^m_k basis (or L^l_k in the J^m_k basis).

    Returns ``{m: coefficient}``; the mode index k is unchanged.
    """
    if direction == "J->L":
        coeffs = {m: _stirling1(l, m) for m in range(l + 1)}
    elif direction == "L->J":
        coeffs = {m: _stirling2(l, m) for m in range(l + 1)}
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return {m: as_scalar(c) for m, c in coeffs.items() if c}


def random_element(rng: random.Random, max_degree: int = 4, max_r: int = 4, nterms: int = 2) -> DOElement:
    terms = {}
    for _ in range(nterms):
        r = rng.randint(-max_r, max_r)
        deg = rng.randint(0, max_degree)
        f = tuple(Scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 3))) for _ in range(deg + 1))
        terms[r] = padd(terms.get(r, ()), f)
    return DOElement(terms)


def jacobiator(x: DOElement, y: DOElement, z: DOElement) -> DOElement:
    return (
        dhat_bracket(x, dhat_bracket(y, z))
        + dhat_bracket(y, dhat_bracket(z, x))
        + dhat_bracket(z, dhat_bracket(x, y))
    )


def check_jacobi(trials: int = 100, seed: int = 0, max_degree: int = 4, max_r: int = 4) -> list:
    """Jacobiator of random triples; returns ``(x, y, z, ok)`` records."""
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        x, y, z = (random_element(rng, max_degree, max_r) for _ in range(3))
        out.append((x, y, z, not jacobiator(x, y, z)))
    return out


# ---------------------------------------------------------------------------
# free-field realization on the beta-gamma Fock space


@dataclass(frozen=True)
class RealizationConfig:
    s: int = 0
    D_max: int = 6
    M_max: int = 3

    def __post_init__(self):
        if self.D_max < 1 or self.M_max < 1:
            raise ValueError("D_max and M_max must be at least 1")


def _falling_value(x: int, l: int) -> int:
    out = 1
    for t in range(l):
        out *= x - t
    return out


def central_constant(l: int, s: int) -> Scalar:
    """Vacuum shift of J^l_0 at twist s: -s(s-1)...(s-l)/(l+1).

    The sign is the one that makes the realization close with C acting by -1
    when normal ordering is taken against the s = 0 annihilation conditions.
    """
    return Scalar(Fraction(-_falling_value(s, l + 1), l + 1))


def _normal_gamma_beta(m: int, n: int):
    """Mode sequence for :gamma(m) beta(n):, rightmost acting first."""
    if ff.is_annihilator("beta", n):
        return [("gamma", m), ("beta", n)]
    return [("beta", n), ("gamma", m)]


@lru_cache(maxsize=None)
def _j_on_key(l: int, k: int, s: int, key) -> tuple:
    level = ff.monomial_level(key[1])
    out: dict = {}
    for n in range(k - level - 1, level + abs(k) + 2):
        d = _falling_value(-n + s, l)
        if not d:
            continue
        state = {key: ONE}
        for mode in reversed(_normal_gamma_beta(k - n, n)):
            state = wick._apply_raw(mode, state)
            if not state:
                break
        for k2, c in state.items():
            v = out.get(k2, ZERO) + c * d
            if v:
                out[k2] = v
            else:
                out.pop(k2)
    if k == 0 and s:
        const = central_constant(l, s)
        if const:
            out[key] = out.get(key, ZERO) + const
            if not out[key]:
                del out[key]
    return tuple(out.items())


class RealizedMode:
    """Operator on beta-gamma Fock states."""

    def __init__(self, pieces, scalar=ZERO):
        # pieces: list of (coefficient, l, k, s)
        self.pieces = [(as_scalar(c), l, k, s) for c, l, k, s in pieces if c]
        self.scalar = as_scalar(scalar)

    def apply(self, v: FockState) -> FockState:
        out: dict = {}
        for key, c in v.terms.items():
            for coeff, l, k, s in self.pieces:
                for k2, c2 in _j_on_key(l, k, s, key):
                    out[k2] = out.get(k2, ZERO) + c * coeff * c2
            if self.scalar:
                out[key] = out.get(key, ZERO) + c * self.scalar
        return FockState(out)


def realize_mode(l: int, k: int, cfg: RealizationConfig = RealizationConfig()) -> RealizedMode:
    """The operator rho(J^l_k)."""
    if abs(k) > cfg.M_max:
        raise ValueError(f"mode {k} outside window |k| <= {cfg.M_max}")
    return RealizedMode([(ONE, l, k, cfg.s)])


def realize(x: DOElement, cfg: RealizationConfig = RealizationConfig(), central_value=-1) -> RealizedMode:
    """rho(x) with C acting by ``central_value``; no mode-window restriction."""
    pieces = []
    for k, f in x.terms.items():
        # t^k f(D) = -sum_l a_l J^l_k
        for l, a in enumerate(to_falling_basis(f)):
            if a:
                pieces.append((-a, l, k, cfg.s))
    return RealizedMode(pieces, x.central * as_scalar(central_value))


def wick_field(l: int) -> wick.CompositeField:
    """:gamma d^l beta: as a composite field."""
    return wick.CompositeField.monomial([("beta", l), ("gamma", 0)])


def m0_basis(max_level: int) -> list:
    out = []
    for d in range(max_level + 1):
        out.extend(ff.space_basis("M^0", d))
    return out


@dataclass
class PairResult:
    pair: tuple
    central: Scalar
    states: int
    passed: bool
    solved_central: Scalar | None
    detail: str = ""


def verify_pair(l1, k1, l2, k2, cfg: RealizationConfig = RealizationConfig(), basis=None) -> PairResult:
    """Check rho([x,y]) = [rho x, rho y] and solve for the scalar by which C acts."""
    x, y = DOElement.J(l1, k1), DOElement.J(l2, k2)
    br = dhat_bracket(x, y)
    noncentral = realize(DOElement(br.terms), cfg)
    rx, ry = realize(x, cfg), realize(y, cfg)
    basis = basis if basis is not None else m0_basis(cfg.D_max)
    solved = None
    ok = True
    detail = ""
    for key in basis:
        v = FockState.basis(key)
        lhs = rx.apply(ry.apply(v)) - ry.apply(rx.apply(v))
        resid = lhs - noncentral.apply(v)
        # resid must be lambda * central * v
        extra = {k2: c for k2, c in resid.terms.items() if k2 != key}
        if extra:
            ok = False
            detail = f"non-scalar residual on {ff.render_key(key)}"
            break
        r = resid.coefficient(key)
        if not br.central:
            if r:
                ok = False
                detail = f"unexpected central term on {ff.render_key(key)}"
                break
            continue
        lam = r / br.central
        if solved is None:
            solved = lam
        elif lam != solved:
            ok = False
            detail = "central scalar differs between states"
            break
    if ok and solved is not None and solved != -1:
        ok = False
        detail = f"central scalar {solved} != -1"
    return PairResult((l1, k1, l2, k2), br.central, len(basis), ok, solved, detail)


def verify_representation(pairs=None, cfg: RealizationConfig = RealizationConfig(), max_l: int = 3) -> list:
    """Run :func:`verify_pair` over ``pairs`` (default: all l <= max_l, |k| <= M_max)."""
    if pairs is None:
        gens = [(l, k) for l in range(max_l + 1) for k in range(-cfg.M_max, cfg.M_max + 1)]
        pairs = [(a[0], a[1], b[0], b[1]) for i, a in enumerate(gens) for b in gens[i:]]
    basis = m0_basis(cfg.D_max)
    return [verify_pair(*p, cfg=cfg, basis=basis) for p in pairs]
