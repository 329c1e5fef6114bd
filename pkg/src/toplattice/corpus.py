"""Named group constructions and the command-line group mini-language.

Specs are whitespace-separated atoms joined by ``x``: ``Z n`` (cyclic),
``Z^k p k`` (elementary abelian), ``D n`` (dihedral of order 2n), ``Q8``,
``Heis p`` (unitriangular 3x3 over the p-element field), ``S n``
(symmetric).  Compact forms like ``Z6`` or ``Z3xQ8`` are accepted too.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .config import Caps, DEFAULT_CAPS
from .errors import InvalidArgumentError
from .groups import (
    FiniteGroup,
    direct_product,
    make_cyclic,
    make_dihedral,
    make_elementary_abelian,
    make_heisenberg,
    make_quaternion,
    make_symmetric,
)

__all__ = ["CorpusEntry", "CorpusSpec", "parse_group_spec", "default_corpus", "load_corpus"]

_COMPACT_SEP = re.compile(r"(?<=[0-9])x(?=[A-Za-z])")
_ATOM = re.compile(r"([A-Za-z^]+)([0-9]+)?\Z")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: str

    def build(self, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
        return parse_group_spec(self.spec, caps=caps)


@dataclass(frozen=True)
class CorpusSpec:
    entries: tuple[CorpusEntry, ...]
    max_order: int | None = None


def _int_arg(tokens: list[str], what: str) -> int:
    if not tokens:
        raise InvalidArgumentError(f"{what} requires a numeric argument")
    try:
        return int(tokens.pop(0))
    except ValueError as exc:
        raise InvalidArgumentError(f"{what} argument must be an integer") from exc


def _parse_atom(tokens: list[str], caps: Caps) -> FiniteGroup:
    head = tokens.pop(0)
    m = _ATOM.match(head)
    if not m:
        raise InvalidArgumentError(f"unrecognized group atom {head!r}")
    name, inline = m.group(1), m.group(2)
    if inline is not None:
        tokens.insert(0, inline)
    if name == "Z":
        return make_cyclic(_int_arg(tokens, "Z"), caps=caps)
    if name == "Z^k":
        p = _int_arg(tokens, "Z^k")
        k = _int_arg(tokens, "Z^k")
        return make_elementary_abelian(p, k, caps=caps)
    if name == "D":
        return make_dihedral(_int_arg(tokens, "D"), caps=caps)
    if name == "Q":
        arg = _int_arg(tokens, "Q")
        if arg != 8:
            raise InvalidArgumentError("only Q8 is available")
        return make_quaternion(caps=caps)
    if name == "Heis":
        return make_heisenberg(_int_arg(tokens, "Heis"), caps=caps)
    if name == "S":
        return make_symmetric(_int_arg(tokens, "S"), caps=caps)
    raise InvalidArgumentError(f"unrecognized group atom {name!r}")


def parse_group_spec(spec: str, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Build the group named by a mini-language spec string."""
    text = _COMPACT_SEP.sub(" x ", spec.replace("×", " x "))
    tokens = text.split()
    if not tokens:
        raise InvalidArgumentError("empty group spec")
    parts: list[list[str]] = [[]]
    for t in tokens:
        if t in ("x", "X"):
            if not parts[-1]:
                raise InvalidArgumentError(f"misplaced product separator in {spec!r}")
            parts.append([])
        else:
            parts[-1].append(t)
    if not parts[-1]:
        raise InvalidArgumentError(f"trailing product separator in {spec!r}")
    factors = []
    for part in parts:
        g = _parse_atom(part, caps)
        if part:
            raise InvalidArgumentError(f"unexpected tokens {part} in group spec {spec!r}")
        factors.append(g)
    out = factors[0]
    for g in factors[1:]:
        out = direct_product(out, g, caps=caps)
    return out


def default_corpus() -> CorpusSpec:
    """The stock corpus: cyclic groups through order 64, elementary abelian
    powers through order 64, mixed abelian products, and the standard small
    non-abelian families and their coprime products."""
    entries: list[CorpusEntry] = []
    for n in range(1, 65):
        entries.append(CorpusEntry(f"Z{n}", f"Z {n}"))
    for p, k in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)]:
        entries.append(CorpusEntry(f"Z({p})^{k}", f"Z^k {p} {k}"))
    for spec in ["Z 2 x Z 4", "Z 2 x Z 8", "Z 4 x Z 4", "Z 2 x Z 16", "Z 4 x Z 8",
                 "Z 3 x Z 9", "Z 6 x Z 6", "Z 2 x Z 32", "Z^k 2 2 x Z 3"]:
        entries.append(CorpusEntry(spec.replace(" ", ""), spec))
    for spec in ["S 3", "S 4", "D 4", "D 5", "D 6", "D 7", "D 8", "D 10", "D 12",
                 "Q8", "Heis 2", "Heis 3", "Z 2 x Q8", "Z 2 x D 4", "Z 3 x Q8",
                 "Z 3 x D 4", "Z 3 x Heis 2", "Z 5 x Q8", "Z^k 3 2 x D 4"]:
        entries.append(CorpusEntry(spec.replace(" ", ""), spec))
    return CorpusSpec(tuple(entries))


def load_corpus(path: str) -> CorpusSpec:
    """Corpus file: {"groups": [spec or {"name","spec"}], "max_order": int?}."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "groups" not in data:
        raise InvalidArgumentError("corpus JSON must be an object with a 'groups' list")
    entries: list[CorpusEntry] = []
    for item in data["groups"]:
        if isinstance(item, str):
            entries.append(CorpusEntry(item.replace(" ", ""), item))
        elif isinstance(item, dict) and "spec" in item:
            entries.append(CorpusEntry(str(item.get("name", item["spec"])), item["spec"]))
        else:
            raise InvalidArgumentError(f"bad corpus entry {item!r}")
    max_order = data.get("max_order")
    if max_order is not None:
        max_order = int(max_order)
    return CorpusSpec(tuple(entries), max_order)
