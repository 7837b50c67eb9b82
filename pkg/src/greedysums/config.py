"""INI-style serialization of space specs and run configurations.

A space section looks like::

    [space]
    kind = xpg
    lambda1 = 1
    lambda2 = 2
    a1 = 2
    a2 = 1/2
    a3 = 1/4
    a4 = 1/4
    p = 7
    g = 1, 9, 82, 821, 9032

Rationals are written ``num/den`` so a round trip is exact.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, Optional

from .core import format_scalar
from .errors import DomainError
from .spaces import SpaceSpec, make_xpg_params

CONFIG_ENV = "GREEDYSUMS_CONFIG"
XPG_KEYS = ("lambda1", "lambda2", "a1", "a2", "a3", "a4", "p")


def spec_to_section(spec: SpaceSpec) -> Dict[str, str]:
    out = {"kind": spec.kind}
    if spec.kind == "xpg":
        p = spec.params
        for key in XPG_KEYS:
            out[key] = format_scalar(getattr(p, key))
        out["g"] = ", ".join(str(v) for v in p.g)
    elif spec.kind == "xiso":
        out["lambda"] = format_scalar(spec.lam)
    return out


def spec_from_section(section) -> SpaceSpec:
    kind = section.get("kind", "").strip().lower()
    if kind == "xpg":
        if "lambda1" not in section or "lambda2" not in section:
            raise DomainError("xpg section needs lambda1 and lambda2")
        overrides = {k: Fraction(section[k]) for k in ("a1", "a2", "a3", "a4", "p") if k in section}
        if "g" in section:
            overrides["g"] = tuple(int(v) for v in section["g"].replace(",", " ").split())
        levels = int(section.get("levels", 5))
        params = make_xpg_params(Fraction(section["lambda1"]), Fraction(section["lambda2"]), levels, **overrides)
        return SpaceSpec.xpg(params)
    if kind == "xiso":
        if "lambda" not in section:
            raise DomainError("xiso section needs lambda")
        return SpaceSpec.xiso(Fraction(section["lambda"]))
    return SpaceSpec(kind)


def dumps_spec(spec: SpaceSpec, section: str = "space") -> str:
    lines = [f"[{section}]"]
    lines += [f"{k} = {v}" for k, v in spec_to_section(spec).items()]
    return "\n".join(lines) + "\n"


def loads_spec(text: str, section: str = "space") -> SpaceSpec:
    cp = configparser.ConfigParser()
    cp.read_string(text)
    if not cp.has_section(section):
        raise DomainError(f"missing [{section}] section")
    return spec_from_section(cp[section])


def default_config_text() -> str:
    """Config named by $GREEDYSUMS_CONFIG, else the shipped preset."""
    path = os.environ.get(CONFIG_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    return resources.files("greedysums").joinpath("data/default.ini").read_text(encoding="utf-8")


@dataclass
class RunConfig:
    """Space section, command parameters, seed and output settings."""

    space: SpaceSpec
    command: Dict[str, str] = field(default_factory=dict)
    seed: int = 0
    output_format: str = "csv"
    output_path: Optional[str] = None

    def dumps(self) -> str:
        parts = [dumps_spec(self.space)]
        run = {"seed": str(self.seed), "format": self.output_format}
        if self.output_path:
            run["output"] = self.output_path
        parts.append("[run]\n" + "".join(f"{k} = {v}\n" for k, v in run.items()))
        if self.command:
            parts.append("[command]\n" + "".join(f"{k} = {v}\n" for k, v in sorted(self.command.items())))
        return "\n".join(parts)

    @classmethod
    def loads(cls, text: str) -> "RunConfig":
        cp = configparser.ConfigParser()
        cp.read_string(text)
        if not cp.has_section("space"):
            raise DomainError("missing [space] section")
        run = cp["run"] if cp.has_section("run") else {}
        fmt = run.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise DomainError(f"unknown output format {fmt!r}")
        return cls(
            space=spec_from_section(cp["space"]),
            command=dict(cp["command"]) if cp.has_section("command") else {},
            seed=int(run.get("seed", 0)),
            output_format=fmt,
            output_path=run.get("output") or None,
        )
