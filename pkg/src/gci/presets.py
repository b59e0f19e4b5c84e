"""Embedded reference configurations runnable by name.

Three instances ship with the tool:

* "toy" — the smallest interesting case, P^1 x P^1 with a two-term
  hypersurface; every number in its report can be checked by hand.
* "anderson-2.2.2" — the worked Calabi-Yau threefold on P^4 x P^1 cut by
  a (2,3) hypersurface and a restricted (3,-1) section, with explicit
  quadrics and linear forms.
* "reducible-1.7" — the P^2 x P^1 x P^1 x P^1 case with a seeded random
  (0,1,1)[4] hypersurface, where every restricted section factors and the
  cut subvariety is reducible.  The sign convention e = +2 is forced by
  the twist degrees [-6] = [-d-e] and [-2] = [-e].
"""

from __future__ import annotations

import copy

from .errors import ConfigError

_TOY = {
    "schema_version": 1,
    "ambient": {
        "factors": [
            {"dim": 1, "vars": ["y0", "y1"]},
            {"dim": 1, "vars": ["z0", "z1"]},
        ],
        "distinguished": 1,
    },
    "bundles": {"L": [1], "M": [1], "d": 2, "e": 2},
    "sections": {
        "F": "y0*z0^2 + y1*z1^2",
        "q": ["0", "1", "0"],
    },
    "options": {"primes": [7], "expected_codim": 2},
}

_ANDERSON = {
    "schema_version": 1,
    "ambient": {
        "factors": [
            {"dim": 4, "vars": ["y0", "y1", "y2", "y3", "y4"]},
            {"dim": 1, "vars": ["z0", "z1"]},
        ],
        "distinguished": 1,
    },
    "bundles": {"L": [2], "M": [3], "d": 3, "e": 1},
    "sections": {
        "F": "(y0^2+y1^2+y2^2+y3^2+y4^2)*z0^3"
             " + (y0^2+y4^2)*z0^2*z1"
             " + (y1^2+y3^2)*z0*z1^2"
             " + (y0^2+y1^2-y2^2-y3^2-y4^2)*z1^3",
        "q": ["y2", "y1", "y0"],
    },
    "options": {
        "primes": [7, 11],
        "expected_codim": 2,
        "hodge": {"h2": 2, "h3": 94, "genera": [2, 8]},
    },
}

_REDUCIBLE = {
    "schema_version": 1,
    "ambient": {
        "factors": [
            {"dim": 2, "vars": ["w0", "w1", "w2"]},
            {"dim": 1, "vars": ["x0", "x1"]},
            {"dim": 1, "vars": ["u0", "u1"]},
            {"dim": 1, "vars": ["v0", "v1"]},
        ],
        "distinguished": 3,
    },
    "bundles": {"L": [0, 1, 1], "M": [3, 1, 1], "d": 4, "e": 2},
    "sections": {"F": "random"},
    "options": {
        "seed": 1,
        "note": "e = +2 so that the two twists are [-d-e] = [-6] and [-e] = [-2]",
    },
}

_PRESETS = {
    "toy": _TOY,
    "anderson-2.2.2": _ANDERSON,
    "reducible-1.7": _REDUCIBLE,
}


def example_names() -> tuple[str, ...]:
    return tuple(sorted(_PRESETS))


def example_config(name: str) -> dict:
    try:
        preset = _PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown example {name!r}; available: {', '.join(example_names())}"
        ) from None
    return copy.deepcopy(preset)
