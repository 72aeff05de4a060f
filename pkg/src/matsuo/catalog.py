"""Named systems and flips: parsing of ``sym:5``, ``sp:3``, ``(12)(34)`` and friends."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ValidationError
from .flips import Flip, identity_flip, inner_flip, make_flip, symplectic_flip
from .transposition import (TranspositionSystem, from_json, orthogonal_f2_group, symmetric_group,
                            symplectic_group, three_cover_sn, two_cover_sn)

_GROUP_RE = re.compile(r"^(sym|sp|o\+|o-|cover2|cover3):(\d+)$")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    param: int

    def __str__(self) -> str:
        return f"{self.family}:{self.param}"


def parse_group(text: str) -> GroupSpec:
    match = _GROUP_RE.match(text.strip())
    if not match:
        raise ValidationError(f"unknown group spec {text!r}; expected sym:N, sp:M, o+:M, o-:M, cover2:N or cover3:N")
    family, param = match.group(1), int(match.group(2))
    minimum = {"sym": 2, "cover2": 2, "cover3": 2}.get(family, 1)
    if param < minimum:
        raise ValidationError(f"{family} needs a parameter of at least {minimum}")
    return GroupSpec(family, param)


def build_group(spec: GroupSpec | str) -> TranspositionSystem:
    spec = parse_group(spec) if isinstance(spec, str) else spec
    builders = {
        "sym": symmetric_group,
        "sp": symplectic_group,
        "o+": lambda m: orthogonal_f2_group(m, "+"),
        "o-": lambda m: orthogonal_f2_group(m, "-"),
        "cover2": two_cover_sn,
        "cover3": three_cover_sn,
    }
    return builders[spec.family](spec.param)


def load_system(path: str | Path) -> TranspositionSystem:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    return from_json(data)


def load_flip(sys: TranspositionSystem, path: str | Path) -> Flip:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict) or not isinstance(data.get("perm"), list):
        raise ValidationError('flip file must look like {"perm": [...]}')
    return make_flip(sys, data["perm"])


def parse_cycles(text: str) -> list[tuple[int, int]]:
    """Transpositions from cycle notation: ``(12)(34)`` or ``(1,2)(3,4)``."""
    text = text.replace(" ", "")
    if not re.fullmatch(r"(\([0-9,]+\))*", text):
        raise ValidationError(f"cannot parse cycle word {text!r}")
    out = []
    for body in re.findall(r"\(([0-9,]+)\)", text):
        parts = body.split(",") if "," in body else list(body)
        if len(parts) != 2 or parts[0] == parts[1]:
            raise ValidationError(f"({body}) is not a transposition")
        i, j = sorted(int(p) for p in parts)
        out.append((i, j))
    return out


def inner_word(sys: TranspositionSystem, text: str) -> list[int]:
    """Point indices for a cycle word, matched against point labels ``(i,j)``.

    On covers the labels without primes are the untwisted transpositions, so
    the word describes the flip lifted from the symmetric group.
    """
    if not sys.labels:
        raise ValidationError("system has no labels to match the cycle word against")
    index = {label: c for c, label in enumerate(sys.labels)}
    word = []
    for i, j in parse_cycles(text):
        label = f"({i},{j})"
        if label not in index:
            raise ValidationError(f"{label} is not a point of this system")
        word.append(index[label])
    return word


def sigma_word(m: int) -> str:
    return "".join(f"({2 * j + 1},{2 * j + 2})" for j in range(m))


def parse_symplectic(text: str) -> tuple[str, int]:
    match = re.fullmatch(r"(type1|type2):(\d+)", text.strip())
    if not match:
        raise ValidationError(f"symplectic flip must be type1:I or type2:I, got {text!r}")
    return match.group(1), int(match.group(2))


def builtin_flips(spec: GroupSpec | str, sys: TranspositionSystem | None = None) -> list[tuple[str, Flip]]:
    """The flips exercised by ``verify`` and the acceptance tests for a named group."""
    spec = parse_group(spec) if isinstance(spec, str) else spec
    sys = sys or build_group(spec)
    out = [("identity", identity_flip(sys))]
    if spec.family in ("sym", "cover2", "cover3"):
        for m in range(1, spec.param // 2 + 1):
            word = sigma_word(m)
            out.append((f"inner {word}", inner_flip(sys, inner_word(sys, word))))
    elif spec.family == "sp":
        for i in range(1, spec.param + 1):
            out.append((f"type1:{i}", symplectic_flip(spec.param, "type1", i, sys)))
        for i in range(1, spec.param // 2 + 1):
            out.append((f"type2:{i}", symplectic_flip(spec.param, "type2", i, sys)))
    else:
        out.append(("inner point 0", inner_flip(sys, [0])))
    return out
