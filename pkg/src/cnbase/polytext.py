"""Text format for polynomials with prime-field (integer) coefficients.

Canonical printing uses explicit '*' between coefficient and power, e.g.
``x^8+x^7+2*x^3+2*x^2+2``; parsing also accepts the compact style without
the star (``2x^3``) and a leading minus.  The variable letter is
presentation-only.
"""

from __future__ import annotations

import re

_TERM = re.compile(
    r"(?P<sign>[+-]?)\s*"
    r"(?:(?P<coef>\d+)\s*\*?\s*)?"
    r"(?:(?P<var>[a-zA-Z])(?:\^(?P<exp>\d+))?)?"
)


def parse_int_poly(text: str) -> tuple[int, ...]:
    """Parse to a little-endian coefficient tuple (may contain negatives).

    Raises ValueError on malformed input or on an empty polynomial.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    var_seen: str | None = None
    while pos < len(s):
        match = _TERM.match(s, pos)
        if match is None or match.end() == pos:
            raise ValueError(f"cannot parse polynomial at ...{s[pos:]!r}")
        sign = -1 if match.group("sign") == "-" else 1
        coef = match.group("coef")
        var = match.group("var")
        exp = match.group("exp")
        if coef is None and var is None:
            raise ValueError(f"cannot parse polynomial at ...{s[pos:]!r}")
        if var is not None:
            if var_seen is None:
                var_seen = var
            elif var != var_seen:
                raise ValueError(f"mixed variables {var_seen!r} and {var!r}")
        c = int(coef) if coef is not None else 1
        e = int(exp) if exp is not None else (1 if var is not None else 0)
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = match.end()
    deg = max(coeffs)
    return tuple(coeffs.get(i, 0) for i in range(deg + 1))


def format_int_poly(coeffs: tuple[int, ...], var: str = "x") -> str:
    """Render a little-endian coefficient tuple; zero prints as '0'."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
        elif e == 1:
            terms.append(f"{var}" if c == 1 else f"{c}*{var}")
        else:
            terms.append(f"{var}^{e}" if c == 1 else f"{c}*{var}^{e}")
    return "+".join(terms) if terms else "0"
