"""Builtin masks, stored as mask-file text with exact surd coefficients.

``example-5.1``
    Scalar (r=1, d=2) two-direction scaling function of approximation
    order 2 derived from the balanced multiwavelet BAT O2.  The published
    table lists every coefficient at half the scale needed for
    ``M_0 = 1`` (it sums to ``1/sqrt 2`` instead of ``sqrt 2``), and all
    published spectra, moments and point values correspond to the doubled
    mask.  The coefficients below are therefore twice the printed ones:
    denominators ``320*sqrt(2)`` and ``80*sqrt(2)`` instead of
    ``640*sqrt(2)`` and ``160*sqrt(2)``.

``example-5.2``
    Multiplicity 2, dilation 2 multiscaling function and multiwavelet,
    shifted so that phi and psi share the support [0, 2].
"""

from __future__ import annotations

from .mask import TwoDirectionSystem, loads_system

__all__ = ["FIXTURES", "fixture_names", "fixture_text", "load_fixture"]

EXAMPLE_5_1 = """\
{
  "name": "example-5.1",
  "dilation": 2,
  "multiplicity": 1,
  "phi": {
    "plus": {
      "1": [["(93-13*sqrt(31))/(320*sqrt(2))"]],
      "2": [["(341-11*sqrt(31))/(320*sqrt(2))"]],
      "3": [["(11-11*sqrt(31))/(320*sqrt(2))"]],
      "4": [["(-13+3*sqrt(31))/(320*sqrt(2))"]]
    },
    "minus": {
      "4": [["(-31+sqrt(31))/(320*sqrt(2))"]],
      "5": [["(217+23*sqrt(31))/(320*sqrt(2))"]],
      "6": [["(23+7*sqrt(31))/(320*sqrt(2))"]],
      "7": [["(-1+sqrt(31))/(320*sqrt(2))"]]
    }
  },
  "psi": [
    {
      "plus": {
        "1": [["(11-sqrt(31))/(80*sqrt(2))"]],
        "2": [["(57+3*sqrt(31))/(80*sqrt(2))"]],
        "3": [["(-91+sqrt(31))/(80*sqrt(2))"]],
        "4": [["(23-3*sqrt(31))/(80*sqrt(2))"]]
      },
      "minus": {
        "4": [["(23-3*sqrt(31))/(80*sqrt(2))"]],
        "5": [["(-91+sqrt(31))/(80*sqrt(2))"]],
        "6": [["(57+3*sqrt(31))/(80*sqrt(2))"]],
        "7": [["(11-sqrt(31))/(80*sqrt(2))"]]
      }
    }
  ]
}
"""

EXAMPLE_5_2 = """\
{
  "name": "example-5.2",
  "dilation": 2,
  "multiplicity": 2,
  "phi": {
    "plus": {
      "1": [["6/(8*sqrt(2))", 0],
            ["(-2*sqrt(3)+sqrt(21))/(8*sqrt(2))", "3/(8*sqrt(2))"]],
      "2": [["(4-2*sqrt(7))/(8*sqrt(2))", 0],
            ["3*sqrt(3)/(8*sqrt(2))", "(2-sqrt(7))/(8*sqrt(2))"]]
    },
    "minus": {
      "2": [["(4+2*sqrt(7))/(8*sqrt(2))", 0],
            ["sqrt(3)/(8*sqrt(2))", "(2+sqrt(7))/(8*sqrt(2))"]],
      "3": [["2/(8*sqrt(2))", 0],
            ["(-2*sqrt(3)-sqrt(21))/(8*sqrt(2))", "1/(8*sqrt(2))"]]
    }
  },
  "psi": [
    {
      "plus": {
        "1": [[0, "(-4+2*sqrt(7))/(8*sqrt(2))"],
              ["(-2+sqrt(7))/(8*sqrt(2))", "-3*sqrt(3)/(8*sqrt(2))"]],
        "2": [[0, "6/(8*sqrt(2))"],
              ["3/(8*sqrt(2))", "(-2*sqrt(3)+sqrt(21))/(8*sqrt(2))"]]
      },
      "minus": {
        "2": [[0, "2/(8*sqrt(2))"],
              ["1/(8*sqrt(2))", "(-2*sqrt(3)-sqrt(21))/(8*sqrt(2))"]],
        "3": [[0, "(-4-2*sqrt(7))/(8*sqrt(2))"],
              ["(-2-sqrt(7))/(8*sqrt(2))", "-sqrt(3)/(8*sqrt(2))"]]
      }
    }
  ]
}
"""

FIXTURES = {"example-5.1": EXAMPLE_5_1, "example-5.2": EXAMPLE_5_2}
_ALIASES = {"5.1": "example-5.1", "5.2": "example-5.2"}


def fixture_names() -> list:
    return sorted(FIXTURES)


def _canonical(name: str) -> str:
    key = _ALIASES.get(name, name)
    if key not in FIXTURES:
        raise KeyError(f"unknown builtin fixture {name!r}; choose from {', '.join(fixture_names())}")
    return key


def fixture_text(name: str) -> str:
    """Mask-file text of a builtin fixture (``"5.1"`` and ``"example-5.1"`` both work)."""
    return FIXTURES[_canonical(name)]


def load_fixture(name: str) -> TwoDirectionSystem:
    return loads_system(fixture_text(name))
