"""Scalar q-series and q-calculus primitives.

Everything downstream (representations, matrix elements, the Plancherel
transform) reduces to the handful of functions here: symmetric q-numbers,
q-factorials, q-Pochhammer symbols, Gaussian binomials, the terminating
basic hypergeometric series 2phi1, the entire q-Bessel series

    J_j(x) = sum_k (-1)^k / ([k]! [k+j]!) * (q^{-j} x)^k,

and Jackson integrals on the geometric lattices q^{2n} (unit interval) and
q^m (half line).

The q-Bessel series at large argument is violently alternating: the value
can be hundreds of orders of magnitude below the largest partial term.  All
series are therefore summed with mpmath at a configurable working precision
and return a :class:`QSeriesValue` carrying a cancellation estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import DivergenceError, DomainError, PoleError, PrecisionError, WindowError

DEFAULT_PRECISION_BITS = 212


@dataclass(frozen=True)
class DeformationParameter:
    """Deformation parameter q in the open interval (0, 1).

    ``precision_bits`` is the working precision used when summing series in
    this deformation; 53 bits is plain double precision.
    """

    q: float
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise DomainError(f"q must lie strictly in (0, 1), got {self.q}")
        if self.precision_bits < 53:
            raise DomainError(f"precision_bits must be >= 53, got {self.precision_bits}")


@dataclass(frozen=True)
class QSeriesValue:
    """Value of a summed q-series together with summation diagnostics.

    ``cancellation_estimate`` is the ratio of the largest partial-term
    magnitude to ``abs(value)``; values near 1 mean no cancellation, large
    values mean the result lost that factor of precision.
    """

    value: complex
    cancellation_estimate: float
    terms_used: int

    def __post_init__(self):
        if self.terms_used < 1:
            raise DomainError("terms_used must be >= 1")


def q_number(m: int, q: DeformationParameter | float) -> float:
    """Symmetric q-number [m] = (q^m - q^-m) / (q - q^-1); odd in m."""
    qv = q.q if isinstance(q, DeformationParameter) else float(q)
    if m == 0:
        return 0.0
    return (qv**m - qv**-m) / (qv - 1.0 / qv)


def q_factorial(n: int, q: DeformationParameter | float) -> float:
    """Symmetric q-factorial [n]! with [0]! = 1."""
    if n < 0:
        raise DomainError(f"q_factorial needs n >= 0, got {n}")
    out = 1.0
    for m in range(2, n + 1):
        out *= q_number(m, q)
    return out


def q_pochhammer(a: complex, q_base: float, k: int) -> complex:
    """Finite q-Pochhammer symbol (a; q_base)_k = prod_{s<k} (1 - a q_base^s)."""
    if k < 0:
        raise DomainError(f"q_pochhammer needs k >= 0, got {k}")
    out = complex(1.0)
    power = complex(1.0)
    for _ in range(k):
        out *= 1.0 - a * power
        power *= q_base
    return out


def q_binomial(n: int, k: int, q_base: float) -> float:
    """Gaussian binomial [n; k] in base q_base; 0 for k < 0 or k > n.

    Computed as prod_{s=1}^{k} (1 - q_base^{n-k+s}) / (1 - q_base^s), which
    is manifestly symmetric under k <-> n-k up to reindexing.
    """
    if n < 0:
        raise DomainError(f"q_binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0.0
    k = min(k, n - k)
    out = 1.0
    for s in range(1, k + 1):
        out *= (1.0 - q_base ** (n - k + s)) / (1.0 - q_base**s)
    return out


def _terminating_index(a: complex, q_base: float, max_n: int = 4096) -> int | None:
    """Return N >= 0 with a = q_base^-N (to ~1e-12 relative), else None."""
    if a == 0:
        return None
    if abs(a.imag if isinstance(a, complex) else 0.0) > 1e-12 * abs(a):
        return None
    av = a.real if isinstance(a, complex) else float(a)
    if av <= 0:
        return None
    import math

    n = -math.log(av) / math.log(q_base)
    n_round = round(n)
    if n_round < 0 or n_round > max_n:
        return None
    if abs(av - q_base ** (-n_round)) <= 1e-12 * abs(av):
        return n_round
    return None


def phi21(
    a: complex,
    b: complex,
    c: complex,
    q_base: float,
    x: complex,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> QSeriesValue:
    """Basic hypergeometric series 2phi1(a, b; c | q_base, x).

    sum_k [(a;q)_k (b;q)_k / ((c;q)_k (q;q)_k)] x^k.  The primary mode is
    the terminating one, a = q_base^-N; otherwise terms must decay below
    2^-precision_bits relative to the partial sum.
    """
    n_stop = _terminating_index(a, q_base)
    with mpmath.workprec(precision_bits):
        av, bv, cv = mpmath.mpmathify(a), mpmath.mpmathify(b), mpmath.mpmathify(c)
        qb, xv = mpmath.mpf(q_base), mpmath.mpmathify(x)
        term = mpmath.mpc(1)
        acc = mpmath.mpc(1)
        max_term = mpmath.mpf(1)
        qpow = mpmath.mpc(1)
        eps = mpmath.mpf(2) ** (-precision_bits)
        k = 0
        growing = 0
        while True:
            if n_stop is not None and k >= n_stop:
                break
            denom = (1 - cv * qpow) * (1 - qb ** (k + 1))
            if denom == 0:
                raise PoleError(f"(c; q)_k vanished at k={k + 1} before termination")
            prev_mag = abs(term)
            term = term * (1 - av * qpow) * (1 - bv * qpow) / denom * xv
            qpow *= qb
            k += 1
            acc += term
            max_term = max(max_term, abs(term))
            if n_stop is None:
                if abs(term) <= eps * abs(acc) and abs(term) < prev_mag:
                    break
                growing = growing + 1 if abs(term) > prev_mag else 0
                if growing > 64:
                    raise DivergenceError("2phi1 terms are not decaying (non-terminating, |x| too large)")
                if k > 100000:
                    raise DivergenceError("2phi1 failed to converge within 100000 terms")
        cancel = float(max_term / abs(acc)) if acc != 0 else float(max_term / eps)
        return QSeriesValue(value=complex(acc), cancellation_estimate=max(cancel, 1.0), terms_used=k + 1)


def q_bessel(j: int, x: complex, q: DeformationParameter) -> QSeriesValue:
    """q-Bessel function J_j(x) = sum_k (-1)^k/([k]![k+j]!) (q^-j x)^k.

    The denominator grows like q^{-k^2}, so the series converges for every
    x, but on the l2 lattice the argument reaches huge values where the sum
    cancels down to a tiny remainder.  Working precision escalates
    automatically up to 4x the configured bits before raising.
    """
    if j < 0:
        raise DomainError(f"q_bessel needs j >= 0, got {j}")
    bits = q.precision_bits
    for factor in (1, 2, 4):
        prec = bits * factor
        value, cancel, terms = _q_bessel_raw(j, x, q.q, prec)
        if cancel <= 2.0 ** (prec - 20):
            return QSeriesValue(value=value, cancellation_estimate=cancel, terms_used=terms)
    raise PrecisionError(
        f"q_bessel(j={j}, |x|={abs(x):.3g}) cancellation {cancel:.3g} exceeds "
        f"2^(precision_bits-20) even at 4x precision; raise precision_bits"
    )


def _q_bessel_raw(j: int, x: complex, qv: float, precision_bits: int):
    with mpmath.workprec(precision_bits):
        qm = mpmath.mpf(qv)
        xv = mpmath.mpmathify(x) * qm ** (-j)
        # 1/[k+j]! prefix for k = 0
        fact_j = mpmath.mpf(1)
        for m in range(2, j + 1):
            fact_j *= (qm**m - qm**-m) / (qm - 1 / qm)
        term = 1 / fact_j
        acc = term
        max_term = abs(term)
        eps = mpmath.mpf(2) ** (-precision_bits)
        k = 0
        while True:
            k += 1
            prev_mag = abs(term)
            term = term * (-xv) / (
                ((qm**k - qm**-k) / (qm - 1 / qm))
                * ((qm ** (k + j) - qm ** (-k - j)) / (qm - 1 / qm))
            )
            acc += term
            max_term = max(max_term, abs(term))
            if abs(term) <= eps * max(abs(acc), eps) and abs(term) < prev_mag:
                break
        cancel = float(max_term / abs(acc)) if acc != 0 else float("inf")
        return complex(acc), max(cancel, 1.0), k + 1


def jackson_integral_unit(f, q: DeformationParameter, tol: float = 1e-15) -> float:
    """Jackson integral over [0, 1] in base q^2: (1-q^2) sum_n q^{2n} f(q^{2n})."""
    q2 = q.q * q.q
    acc = 0.0
    weight = 1.0
    grow = 0
    n = 0
    while True:
        term = weight * f(weight)
        acc += term
        if abs(term) <= tol * max(abs(acc), 1e-300) and n >= 8:
            break
        if n > 0 and abs(term) > abs(prev_term) and abs(term) > max(abs(acc), 1.0):
            grow += 1
            if grow >= 8:
                raise DivergenceError("Jackson tail on the q^{2n} lattice is not decaying")
        else:
            grow = 0
        prev_term = term
        weight *= q2
        n += 1
        if n > 200000:
            raise DivergenceError("Jackson integral failed to converge within 200000 points")
    return (1.0 - q2) * acc


def jackson_integral_halfline(
    g,
    q: DeformationParameter,
    m_min: int,
    m_max: int,
    tol: float = 1e-10,
    check_window: bool = False,
) -> float:
    """Jackson analogue of int_0^inf p g(p) dp on the lattice p = q^m.

    (1-q) sum_{m=m_min}^{m_max} q^{2m} g(q^m).  With ``check_window`` the
    window must cover the support of g to within ``tol``: if an endpoint
    term still carries relative mass, a WindowError suggesting an extended
    window is raised.  The check is off by default so that explicit
    geometric sums over a declared window stay valid.
    """
    if m_min > m_max:
        raise DomainError(f"empty lattice window [{m_min}, {m_max}]")
    qv = q.q
    terms = [(qv ** (2 * m)) * g(qv**m) for m in range(m_min, m_max + 1)]
    total = sum(terms)
    if check_window and len(terms) > 1:
        scale = max(max(abs(t) for t in terms), 1e-300)
        if abs(terms[0]) > tol * scale:
            raise WindowError(
                f"lattice endpoint m_min={m_min} carries mass {abs(terms[0]) / scale:.3g}",
                suggested=(m_min - max(4, (m_max - m_min) // 2), m_max),
            )
        if abs(terms[-1]) > tol * scale:
            raise WindowError(
                f"lattice endpoint m_max={m_max} carries mass {abs(terms[-1]) / scale:.3g}",
                suggested=(m_min, m_max + max(4, (m_max - m_min) // 2)),
            )
    return (1.0 - qv) * total
