"""Exterior calculus on the 4-dimensional fiber.

Forms live over one of two coframes:

  DH     dh0, dh1, dh2, dh3 (coordinate differentials; d acts here)
  ALPHA  the rescaled connection coframe a0, a1, a2, a3

with ScalarField coefficients in the fiber coordinates h0..h3.  Writing
t^2 = h0^2 + h1^2 + h2^2 + h3^2, the ALPHA coframe expands in DH as
a_i = t^-3 * (row i of M) with

    M = [[ h0,  h1,  h2,  h3],
         [-h1,  h0,  h3, -h2],
         [-h2, -h3,  h0,  h1],
         [-h3,  h2, -h1,  h0]],

i.e. a0 = t^-2 dt and t*a_1, t*a_2, t*a_3 are the connection components
of the fiber Maurer-Cartan form h^-1 dh; M M^T = t^2 Id, so the inverse
substitution is dh_j = t * sum_i M[i][j] a_i.

The hypercomplex pullbacks act on the ALPHA coframe by the substitution
a0 -> a_a, a_a -> -a0, a_b -> -a_c, a_c -> a_b (cyclic (a, b, c));
the action on a_a itself is the one forced by squaring to -Id.
Coefficients are left untouched by the pullback; the invariance facts
asserted downstream concern constant-coefficient forms.

On the trivial fiber (vanishing curvature) the coframe obeys

    d a0 = 0,      d a_a = -t a0 ^ a_a - 2 t a_b ^ a_c,

which d_via_structure applies to constant-coefficient ALPHA forms; the
general exterior derivative lives in the DH coframe.

Form equality is decided by simplify-then-sample: coefficients that fold
to literal constants are compared exactly, everything else is evaluated
at random points with 0.5 <= |h| <= 2 (Schwartz-Zippel style identity
testing; denominator zeros are rejection-sampled away).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from qsh_lab import scalarfield as sf
from qsh_lab.quaternion import Quaternion

DH = "dh"
ALPHA = "alpha"

_INDICES = (0, 1, 2, 3)


class CoframeError(ValueError):
    pass


@dataclass
class VerticalForm:
    coframe: str
    degree: int
    terms: dict = dc_field(default_factory=dict)  # sorted index tuple -> ScalarField

    def __post_init__(self):
        self.terms = {k: v for k, v in self.terms.items() if not sf.is_zero(v)}

    def copy(self) -> "VerticalForm":
        return VerticalForm(self.coframe, self.degree, dict(self.terms))

    def coefficient(self, key) -> sf.Field:
        return self.terms.get(tuple(key), sf.ZERO)

    def is_structurally_zero(self) -> bool:
        return not self.terms


def zero_form(degree: int, coframe: str = DH) -> VerticalForm:
    return VerticalForm(coframe, degree, {})


def scalar_form(f: sf.Field, coframe: str = DH) -> VerticalForm:
    return VerticalForm(coframe, 0, {(): f})


def basis_one_form(i: int, coframe: str) -> VerticalForm:
    return VerticalForm(coframe, 1, {(i,): sf.ONE})


def dh(i: int) -> VerticalForm:
    return basis_one_form(i, DH)


def alpha(i: int) -> VerticalForm:
    return basis_one_form(i, ALPHA)


def add(u: VerticalForm, v: VerticalForm) -> VerticalForm:
    if u.coframe != v.coframe or u.degree != v.degree:
        raise CoframeError("can only add forms of equal degree in one coframe")
    terms = dict(u.terms)
    for k, f in v.terms.items():
        terms[k] = sf.add(terms.get(k, sf.ZERO), f)
    return VerticalForm(u.coframe, u.degree, terms)


def sub(u: VerticalForm, v: VerticalForm) -> VerticalForm:
    return add(u, scale(sf.const(-1), v))


def scale(f, u: VerticalForm) -> VerticalForm:
    if not isinstance(f, sf.Field):
        f = sf.const(f)
    return VerticalForm(u.coframe, u.degree,
                        {k: sf.mul(f, g) for k, g in u.terms.items()})


def _merge_sign(s, t):
    """Sign of sorting the concatenation of two strictly increasing tuples,
    or (0, None) when they share an index."""
    inversions = 0
    for x in t:
        if x in s:
            return 0, None
        inversions += sum(1 for y in s if y > x)
    merged = tuple(sorted(s + t))
    return (-1) ** inversions, merged


def wedge(u: VerticalForm, v: VerticalForm) -> VerticalForm:
    if u.coframe != v.coframe:
        raise CoframeError("wedge requires a common coframe")
    degree = u.degree + v.degree
    if degree > 4:
        return zero_form(4, u.coframe)
    terms = {}
    for s, f in u.terms.items():
        for t, g in v.terms.items():
            sign, merged = _merge_sign(s, t)
            if sign == 0:
                continue
            contrib = sf.mul(f, g)
            if sign < 0:
                contrib = sf.neg(contrib)
            terms[merged] = sf.add(terms.get(merged, sf.ZERO), contrib)
    return VerticalForm(u.coframe, degree, terms)


def wedge_all(factors) -> VerticalForm:
    out = None
    for f in factors:
        out = f if out is None else wedge(out, f)
    if out is None:
        raise ValueError("empty wedge")
    return out


def d(u: VerticalForm) -> VerticalForm:
    """Exterior derivative in the DH coframe."""
    if u.coframe != DH:
        raise CoframeError("d acts on the DH coframe; convert with to_dh first")
    if u.degree >= 4:
        return zero_form(4, DH)
    terms = {}
    for s, f in u.terms.items():
        for b in _INDICES:
            if b in s:
                continue
            df = f.diff(b)
            if sf.is_zero(df):
                continue
            sign = (-1) ** sum(1 for x in s if x < b)
            key = tuple(sorted(s + (b,)))
            contrib = df if sign > 0 else sf.neg(df)
            terms[key] = sf.add(terms.get(key, sf.ZERO), contrib)
    return VerticalForm(DH, u.degree + 1, terms)


# --- the ALPHA coframe in DH --------------------------------------------------

T2 = sf.add(sf.add(sf.pow_(sf.H0, 2), sf.pow_(sf.H1, 2)),
            sf.add(sf.pow_(sf.H2, 2), sf.pow_(sf.H3, 2)))
T = sf.sqrt(T2)

_M_ENTRIES = (
    (sf.H0, sf.H1, sf.H2, sf.H3),
    (sf.neg(sf.H1), sf.H0, sf.H3, sf.neg(sf.H2)),
    (sf.neg(sf.H2), sf.neg(sf.H3), sf.H0, sf.H1),
    (sf.neg(sf.H3), sf.H2, sf.neg(sf.H1), sf.H0),
)

COFRAME_MATRIX = _M_ENTRIES

_T_MINUS3 = sf.pow_(T, -3)

ALPHA_IN_DH = tuple(
    VerticalForm(DH, 1, {(j,): sf.mul(_T_MINUS3, _M_ENTRIES[i][j]) for j in _INDICES})
    for i in _INDICES)

# Connection components theta_a = t * a_a and theta_0 = t^-1 dt: rational
# coefficient fields t^-2 * (row of M), exact at rational points.
THETA_IN_DH = tuple(
    VerticalForm(DH, 1, {(j,): sf.div(_M_ENTRIES[i][j], T2) for j in _INDICES})
    for i in _INDICES)

_ALPHA_WEDGE_CACHE = {(): scalar_form(sf.ONE, DH)}


def _alpha_wedge(key) -> VerticalForm:
    if key not in _ALPHA_WEDGE_CACHE:
        _ALPHA_WEDGE_CACHE[key] = wedge_all([ALPHA_IN_DH[i] for i in key])
    return _ALPHA_WEDGE_CACHE[key]


def to_dh(u: VerticalForm) -> VerticalForm:
    """Expand an ALPHA form in the DH coframe."""
    if u.coframe == DH:
        raise CoframeError("form is already in the DH coframe")
    out = zero_form(u.degree, DH)
    for key, f in u.terms.items():
        out = add(out, scale(f, _alpha_wedge(key)))
    return out


def as_dh(u: VerticalForm) -> VerticalForm:
    return u if u.coframe == DH else to_dh(u)


# --- hypercomplex pullbacks ---------------------------------------------------

_CYCLIC = {1: (2, 3), 2: (3, 1), 3: (1, 2)}


def _pullback_index_map(a: int):
    b, c = _CYCLIC[a]
    return {0: (a, 1), a: (0, -1), b: (c, -1), c: (b, 1)}


def pullback_hyper(u: VerticalForm, a: int) -> VerticalForm:
    """Pullback along the a-th hypercomplex structure, as the coframe
    substitution a0 -> a_a, a_a -> -a0, a_b -> -a_c, a_c -> a_b.
    Degree-0 coefficients are left unchanged."""
    if u.coframe != ALPHA:
        raise CoframeError("hypercomplex pullback acts on the ALPHA coframe")
    if a not in (1, 2, 3):
        raise ValueError("a must be 1, 2 or 3")
    mapping = _pullback_index_map(a)
    terms = {}
    for key, f in u.terms.items():
        sign = 1
        image = []
        for idx in key:
            new_idx, s = mapping[idx]
            image.append(new_idx)
            sign *= s
        inversions = 0
        for i in range(len(image)):
            for j in range(i + 1, len(image)):
                if image[i] > image[j]:
                    inversions += 1
        sign *= (-1) ** inversions
        new_key = tuple(sorted(image))
        contrib = f if sign > 0 else sf.neg(f)
        terms[new_key] = sf.add(terms.get(new_key, sf.ZERO), contrib)
    return VerticalForm(ALPHA, u.degree, terms)


# --- structure equations on the trivial fiber ---------------------------------

def _structure_dalpha_over_t(a: int) -> VerticalForm:
    """(1/t) d a_a as a constant-coefficient ALPHA 2-form."""
    if a == 0:
        return zero_form(2, ALPHA)
    b, c = _CYCLIC[a]
    terms = {(0, a): sf.const(-1)}
    key = tuple(sorted((b, c)))
    coeff = sf.const(-2) if (b, c) == key else sf.const(2)
    terms[key] = coeff
    return VerticalForm(ALPHA, 2, terms)


def structure_dalpha(a: int) -> VerticalForm:
    """d a_a as an ALPHA 2-form (zero curvature): -t a0^a_a - 2t a_b^a_c."""
    return scale(T, _structure_dalpha_over_t(a))


def d_via_structure(u: VerticalForm) -> VerticalForm:
    """Exterior derivative of a constant-coefficient ALPHA form computed
    purely from the coframe structure equations.

    Every Leibniz term contains exactly one d a_i factor, hence exactly
    one factor of t; pulling it out keeps the accumulation rational, so
    cancellations happen structurally (exact zero coefficient maps).
    """
    if u.coframe != ALPHA:
        raise CoframeError("structure-equation d acts on the ALPHA coframe")
    acc = zero_form(u.degree + 1, ALPHA)
    for key, f in u.terms.items():
        if f.free_vars():
            raise ValueError("structure-equation d needs constant coefficients")
        for pos, idx in enumerate(key):
            sign = (-1) ** pos
            factors = [alpha(i) for i in key[:pos]]
            factors.append(_structure_dalpha_over_t(idx))
            factors.extend(alpha(i) for i in key[pos + 1:])
            piece = wedge_all(factors)
            coeff = f if sign > 0 else sf.neg(f)
            acc = add(acc, scale(coeff, piece))
    return scale(T, acc)


# --- randomized equality -------------------------------------------------------

def sample_point(rng: random.Random, lo: float = 0.5, hi: float = 2.0):
    """A float point with lo <= |h| <= hi (rejection sampling)."""
    while True:
        p = tuple(rng.uniform(-hi, hi) for _ in range(4))
        norm = sum(x * x for x in p) ** 0.5
        if lo <= norm <= hi:
            return p


def sample_rational_point(rng: random.Random):
    """A nonzero exact rational point with moderate entries."""
    while True:
        p = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 8)) for _ in range(4))
        if any(p):
            return p


@dataclass
class EqualityReport:
    equal: bool
    max_residual: float
    syntactic: bool
    witness: tuple = None


def equal(u: VerticalForm, v: VerticalForm, trials: int = 100,
          tolerance: float = 1e-10, rng: random.Random = None,
          rational: bool = False) -> EqualityReport:
    """Simplify-then-sample equality of two forms (auto-converts coframes)."""
    if u.coframe != v.coframe:
        u, v = as_dh(u), as_dh(v)
    if u.degree != v.degree:
        raise CoframeError("cannot compare forms of different degree")
    deltas = []
    for key in sorted(set(u.terms) | set(v.terms)):
        delta = sf.sub(u.terms.get(key, sf.ZERO), v.terms.get(key, sf.ZERO))
        if sf.is_const(delta):
            if delta.value != 0:
                return EqualityReport(False, abs(float(delta.value)), True)
        else:
            deltas.append(delta)
    if not deltas:
        return EqualityReport(True, 0.0, True)
    rng = rng or random.Random(0)
    worst = 0.0
    witness = None
    for _ in range(trials):
        for _attempt in range(64):
            point = sample_rational_point(rng) if rational else sample_point(rng)
            try:
                memo = {}
                residual = max(abs(float(dl.evaluate(point, memo))) for dl in deltas)
            except (ZeroDivisionError, ValueError):
                continue
            break
        else:
            raise RuntimeError("all sample points rejected")
        if residual > worst:
            worst = residual
            witness = point
    ok = worst <= tolerance
    return EqualityReport(ok, worst, False, witness if not ok else None)


def is_zero_form(u: VerticalForm, trials: int = 100, tolerance: float = 1e-10,
                 rng: random.Random = None, rational: bool = False) -> EqualityReport:
    return equal(u, zero_form(u.degree, u.coframe), trials=trials,
                 tolerance=tolerance, rng=rng, rational=rational)


# --- the Maurer-Cartan oracle --------------------------------------------------

def maurer_cartan_components(h: Quaternion):
    """Coefficient matrix C[i][b] of dh_b in component i of h^-1 dh,
    computed by exact quaternion arithmetic at the point h."""
    hinv = h.inverse()
    cols = [hinv * Quaternion.unit(b) for b in range(4)]
    return [[cols[b].components()[i] for b in range(4)] for i in range(4)]


def theta_components_at(h: Quaternion):
    """The same matrix from the closed coframe formulas, exactly."""
    point = h.components()
    memo = {}
    return [[THETA_IN_DH[i].coefficient((b,)).evaluate(point, memo)
             for b in range(4)] for i in range(4)]
