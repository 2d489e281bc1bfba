"""Mass functions, point transformations and their Jacobians.

Every profile is dimensionless: masses are in units of ``m0`` and lengths in
oscillator units, so ``J = sqrt(m)`` and ``s' = J``.  The catalog is closed;
arbitrary user masses would need a numerical inverse of ``s``.

A profile carries two domains.  The *natural* domain is where the closed
forms make sense (``x0 + lam*x > 0`` for the MDNT kinds, the whole line
otherwise).  The singular-oscillator domain ``[x_min, inf)`` starts where
``s`` vanishes, because the centrifugal term forces ``y = s(x) >= 0``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, UsageError

__all__ = ["MassKind", "MassProfile", "parse_profile_record"]


class MassKind(str, enum.Enum):
    MDNT0 = "Mdnt0"
    MDNTN = "MdntN"
    REGULAR = "Regular"
    EXPONENTIAL = "Exponential"
    CONSTANT = "ConstantMass"


@dataclass(frozen=True)
class MassProfile:
    """One entry of the mass catalog.

    Parameters
    ----------
    kind : MassKind
    n : int
        MDNT index, only meaningful for ``MdntN`` (n >= 1).
    x0, lam : float
        Shift and inverse length of the profile.
    x_min : float, optional
        Lower end of the singular-oscillator domain.  Derived from
        ``s(x_min) = 0`` when omitted; passing a value is only useful to
        describe (and then reject) inconsistent set-ups.
    """

    kind: MassKind
    n: int = 1
    x0: float = 1.0
    lam: float = 1.0
    x_min: Optional[float] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "kind", MassKind(self.kind))
        if self.kind is MassKind.MDNTN and self.n < 1:
            raise UsageError("MdntN profiles need n >= 1")
        if self.x_min is None:
            object.__setattr__(self, "x_min", self._zero_of_s())

    # -- catalog constructors -------------------------------------------------
    @classmethod
    def mdnt0(cls, x0=1.0, lam=1.0):
        return cls(MassKind.MDNT0, x0=x0, lam=lam)

    @classmethod
    def mdntn(cls, n=1, x0=0.0, lam=1.0):
        return cls(MassKind.MDNTN, n=n, x0=x0, lam=lam)

    @classmethod
    def regular(cls, lam=1.0):
        return cls(MassKind.REGULAR, x0=0.0, lam=lam)

    @classmethod
    def exponential(cls, x0=1.0, lam=1.0):
        return cls(MassKind.EXPONENTIAL, x0=x0, lam=lam)

    @classmethod
    def constant(cls):
        return cls(MassKind.CONSTANT, x0=0.0, lam=1.0)

    # -- bookkeeping ----------------------------------------------------------
    @property
    def ordering_a(self) -> float:
        """Ordering label a of the kinetic term; b = -1/2 - a."""
        if self.kind is MassKind.MDNTN:
            return (1.0 - self.n) / (4.0 * self.n)
        return -0.25

    @property
    def ordering_b(self) -> float:
        return -0.5 - self.ordering_a

    @property
    def _power(self) -> float:
        # m = u**(-p) for the MDNT kinds
        if self.kind is MassKind.MDNT0:
            return 2.0
        return 4.0 * self.n / (2 * self.n + 1)

    def _zero_of_s(self) -> float:
        k, x0, lam = self.kind, self.x0, self.lam
        if lam == 0:
            return math.nan
        if k is MassKind.MDNT0:
            return (1.0 - x0) / lam
        if k is MassKind.MDNTN:
            return -x0 / lam
        if k is MassKind.EXPONENTIAL:
            if x0 > 0:
                return math.log(x0) / lam
            return -math.inf
        return 0.0

    @property
    def natural_lower(self) -> float:
        """Infimum of the natural domain (where the closed forms are defined)."""
        if self.kind in (MassKind.MDNT0, MassKind.MDNTN):
            return -self.x0 / self.lam
        return -math.inf

    @property
    def domain_x(self) -> tuple[float, float]:
        return (self.x_min, math.inf)

    @property
    def is_mdnt(self) -> bool:
        return self.kind in (MassKind.MDNT0, MassKind.MDNTN)

    def _u(self, x):
        x = np.asarray(x, dtype=float)
        return self.x0 + self.lam * x

    def _check_natural(self, x):
        x = np.asarray(x, dtype=float)
        if self.is_mdnt:
            u = self._u(x)
            ok = u > 0 if self.kind is MassKind.MDNT0 else u >= 0
            if not np.all(ok):
                raise DomainError(
                    f"x outside the natural domain of {self.kind.value} "
                    f"(need x0 + lam*x > 0)"
                )
        if np.any(~np.isfinite(x)):
            raise DomainError("x must be finite")
        return x

    def check_domain(self, x):
        """Raise DomainError unless every x lies in [x_min, inf)."""
        x = self._check_natural(x)
        if np.any(x < self.x_min):
            raise DomainError(f"x below x_min = {self.x_min!r}")
        return x

    # -- closed forms ---------------------------------------------------------
    def mass(self, x):
        """Dimensionless mass m(x)/m0."""
        x = self._check_natural(x)
        k = self.kind
        if k is MassKind.MDNT0 or k is MassKind.MDNTN:
            out = self._u(x) ** (-self._power)
        elif k is MassKind.REGULAR:
            out = 1.0 / (1.0 + (self.lam * x) ** 2)
        elif k is MassKind.EXPONENTIAL:
            out = np.exp(2.0 * self.lam * x)
        else:
            out = np.ones_like(x)
        return out if out.ndim else float(out)

    def mass_derivatives(self, x):
        """Return (m, m', m'') from the analytic closed forms."""
        x = self._check_natural(x)
        lam = self.lam
        k = self.kind
        if k is MassKind.MDNT0 or k is MassKind.MDNTN:
            p = self._power
            u = self._u(x)
            m = u ** (-p)
            m1 = -p * lam * u ** (-p - 1)
            m2 = p * (p + 1) * lam**2 * u ** (-p - 2)
        elif k is MassKind.REGULAR:
            q = 1.0 + (lam * x) ** 2
            m = 1.0 / q
            m1 = -2.0 * lam**2 * x / q**2
            m2 = (6.0 * lam**4 * x**2 - 2.0 * lam**2) / q**3
        elif k is MassKind.EXPONENTIAL:
            m = np.exp(2.0 * lam * x)
            m1 = 2.0 * lam * m
            m2 = 4.0 * lam**2 * m
        else:
            m = np.ones_like(x)
            m1 = np.zeros_like(x)
            m2 = np.zeros_like(x)
        return m, m1, m2

    def jacobian(self, x):
        """J(x) = s'(x) = sqrt(m(x)/m0)."""
        x = self._check_natural(x)
        k = self.kind
        if k is MassKind.MDNT0 or k is MassKind.MDNTN:
            out = self._u(x) ** (-0.5 * self._power)
        elif k is MassKind.REGULAR:
            out = 1.0 / np.sqrt(1.0 + (self.lam * x) ** 2)
        elif k is MassKind.EXPONENTIAL:
            out = np.exp(self.lam * x)
        else:
            out = np.ones_like(x)
        return out if out.ndim else float(out)

    def jacobian_prime(self, x):
        """dJ/dx."""
        x = self._check_natural(x)
        lam = self.lam
        k = self.kind
        if k is MassKind.MDNT0 or k is MassKind.MDNTN:
            h = 0.5 * self._power
            out = -h * lam * self._u(x) ** (-h - 1.0)
        elif k is MassKind.REGULAR:
            out = -(lam**2) * x * (1.0 + (lam * x) ** 2) ** -1.5
        elif k is MassKind.EXPONENTIAL:
            out = lam * np.exp(lam * x)
        else:
            out = np.zeros_like(x)
        return out if out.ndim else float(out)

    def bijection_s(self, x):
        """y = s(x), normalised so that the integration constant y0 is 0."""
        x = self._check_natural(x)
        k, x0, lam = self.kind, self.x0, self.lam
        if k is MassKind.MDNT0:
            out = np.log(self._u(x)) / lam
        elif k is MassKind.MDNTN:
            m = 2 * self.n + 1
            out = m * self._u(x) ** (1.0 / m) / lam
        elif k is MassKind.REGULAR:
            out = np.arcsinh(lam * x) / lam
        elif k is MassKind.EXPONENTIAL:
            out = (np.exp(lam * x) - x0) / lam
        else:
            out = x.copy()
        return out if out.ndim else float(out)

    def inverse_s(self, y):
        """x = s^{-1}(y)."""
        y = np.asarray(y, dtype=float)
        k, x0, lam = self.kind, self.x0, self.lam
        if k is MassKind.MDNT0:
            out = (np.exp(lam * y) - x0) / lam
        elif k is MassKind.MDNTN:
            m = 2 * self.n + 1
            if np.any(lam * y < 0):
                raise DomainError("MdntN inverse needs lam*y >= 0")
            out = ((lam * y / m) ** m - x0) / lam
        elif k is MassKind.REGULAR:
            out = np.sinh(lam * y) / lam
        elif k is MassKind.EXPONENTIAL:
            arg = lam * y + x0
            if np.any(arg <= 0):
                raise DomainError("Exponential inverse needs lam*y + x0 > 0")
            out = np.log(arg) / lam
        else:
            out = y.copy()
        return out if out.ndim else float(out)

    # -- checks ---------------------------------------------------------------
    def mdnt_coefficients(self) -> tuple[float, float]:
        """(c1, c2) of the null-term equation c1 m m'' + c2 m'^2 = 0."""
        a = self.ordering_a
        c1 = 0.25 + a
        c2 = 1.0 / 16.0 - a * a - (0.5 + 2.0 * a)
        return c1, c2

    def mdnt_residual(self, x):
        """c1 m m'' + c2 (m')^2 for an MdntN profile (zero up to rounding)."""
        if self.kind is not MassKind.MDNTN:
            raise UsageError("mdnt_residual applies to MdntN profiles only")
        c1, c2 = self.mdnt_coefficients()
        m, m1, m2 = self.mass_derivatives(x)
        return c1 * m * m2 + c2 * m1 * m1

    def validate(self, samples: int = 201, span: float = 10.0):
        """Check the bijection conditions; failures go into the report."""
        from .verify import VerificationReport

        problems = []
        ctx = {"profile": self.describe()}
        if self.lam == 0 or not math.isfinite(self.lam):
            problems.append("degenerate Jacobian (lambda = 0)")
        else:
            lo = self.x_min
            if not math.isfinite(lo):
                lo = -span
            xs = np.linspace(lo, lo + span, samples)
            if self.is_mdnt and self.kind is MassKind.MDNTN and lo == self.natural_lower:
                xs = xs[1:]
            try:
                with np.errstate(all="ignore"):
                    jac = self.jacobian(xs)
                    s = self.bijection_s(xs)
                if not np.all(np.isfinite(jac)) or not np.all(jac > 0):
                    problems.append("Jacobian not positive on domain")
                if not np.all(np.diff(s) > 0):
                    problems.append("s not strictly increasing")
            except DomainError as exc:
                problems.append(f"domain sample rejected: {exc}")
            if math.isfinite(self.x_min):
                try:
                    s0 = float(self.bijection_s(self.x_min))
                    if abs(s0) > 1e-12 * (1 + abs(self.x_min)):
                        problems.append(f"s(x_min) = {s0!r}, expected 0")
                except DomainError as exc:
                    problems.append(f"x_min outside natural domain: {exc}")
            elif self.kind is not MassKind.EXPONENTIAL or self.x0 != 0:
                problems.append("s(x_min)=0 has no solution")
        return VerificationReport(
            check_id="mass_profile",
            residual=float(len(problems)),
            tolerance=0.0,
            context={**ctx, "problems": "; ".join(problems)},
        )

    def describe(self) -> str:
        parts = [f"kind={self.kind.value}"]
        if self.kind is MassKind.MDNTN:
            parts.append(f"n={self.n}")
        if self.kind is not MassKind.CONSTANT:
            parts.append(f"x0={self.x0!r}")
            parts.append(f"lambda={self.lam!r}")
        return ",".join(parts)


_KIND_ALIASES = {k.value.lower(): k for k in MassKind}
_KIND_ALIASES.update({"mdnt": MassKind.MDNTN, "constant": MassKind.CONSTANT,
                      "exp": MassKind.EXPONENTIAL})


def parse_profile_record(text: str) -> MassProfile:
    """Parse ``kind=MdntN n=1 x0=0 lambda=1`` (comma, space or newline separated)."""
    fields = {}
    for tok in text.replace(",", " ").split():
        if "=" not in tok:
            raise UsageError(f"expected key=value, got {tok!r}")
        key, val = tok.split("=", 1)
        fields[key.strip().lower()] = val.strip()
    try:
        kind = _KIND_ALIASES[fields.pop("kind").lower()]
    except KeyError:
        raise UsageError(f"profile record needs a known kind: {text!r}") from None
    kw = {}
    for key, val in fields.items():
        if key == "n":
            kw["n"] = int(val)
        elif key == "x0":
            kw["x0"] = float(val)
        elif key in ("lambda", "lam"):
            kw["lam"] = float(val)
        elif key == "x_min":
            kw["x_min"] = float(val)
        else:
            raise UsageError(f"unknown profile key {key!r}")
    defaults = {
        MassKind.MDNT0: dict(x0=1.0),
        MassKind.MDNTN: dict(x0=0.0),
        MassKind.REGULAR: dict(x0=0.0),
        MassKind.EXPONENTIAL: dict(x0=1.0),
        MassKind.CONSTANT: dict(x0=0.0),
    }[kind]
    return MassProfile(kind, **{**defaults, **kw})
