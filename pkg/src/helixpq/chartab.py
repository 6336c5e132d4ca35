"""Character table data model, text encoding and validation.

A table records conjugacy classes (name, element order, optionally size and
power maps) and characters (ordinary or p-modular Brauer) with values in
cyclotomic fields.  Tables are either `full` (every class and every ordinary
character of the group, which enables the strong global checks: both
orthogonality relations, sum of squared degrees, class equation) or `partial`
(any subset of rows/columns; only local sanity checks apply).

Classes are kept in canonical order: ascending element order, then name.
Partial-augmentation chains for a unit of order n store, for every divisor
m > 1 of n, the augmentation vector of u^{n/m} over the classes whose element
order divides m (the identity class is excluded: its augmentation vanishes
for nontrivial torsion units).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from sympy import isprime

from .cyclo import (
    CycValue,
    cyc_zero,
    divisors,
    galois_apply,
    parse_cyc,
    render_cyc,
)

__all__ = [
    "ConjClass",
    "Character",
    "CharacterTable",
    "PAChain",
    "ValidationReport",
    "parse_table",
    "render_table",
    "validate",
    "unit_character_value",
    "parse_chain",
    "render_chain",
    "trivial_chain",
    "check_chain_shape",
    "TableError",
]


class TableError(ValueError):
    """Malformed or inconsistent character-table data."""


@dataclass(frozen=True)
class ConjClass:
    name: str
    element_order: int
    size: Optional[int] = None
    power_maps: Mapping[int, str] = field(default_factory=dict)


@dataclass
class Character:
    name: str
    degree: int
    values: dict[str, CycValue]
    characteristic: int = 0  # 0 = ordinary, prime p = Brauer character mod p

    def value(self, class_name: str) -> Optional[CycValue]:
        return self.values.get(class_name)


@dataclass
class CharacterTable:
    group_name: str
    classes: list[ConjClass]
    characters: list[Character]
    order: Optional[int] = None
    completeness: str = "full"
    notes: Optional[str] = None

    def __post_init__(self):
        self.classes = sorted(self.classes, key=lambda c: (c.element_order, c.name))
        self._by_name = {c.name: c for c in self.classes}
        if len(self._by_name) != len(self.classes):
            raise TableError(f"duplicate class names in table {self.group_name!r}")

    # -- lookups -------------------------------------------------------------

    def class_by_name(self, name: str) -> ConjClass:
        try:
            return self._by_name[name]
        except KeyError:
            raise TableError(
                f"table {self.group_name!r} has no class named {name!r}"
            ) from None

    def identity_name(self) -> Optional[str]:
        for c in self.classes:
            if c.element_order == 1:
                return c.name
        return None

    def classes_of_order_dividing(self, n: int, include_identity: bool = False):
        return [
            c
            for c in self.classes
            if n % c.element_order == 0 and (include_identity or c.element_order > 1)
        ]

    def element_orders(self) -> list[int]:
        return sorted({c.element_order for c in self.classes})

    def character_by_name(self, name: str) -> Character:
        for ch in self.characters:
            if ch.name == name:
                return ch
        raise TableError(f"table {self.group_name!r} has no character named {name!r}")

    def characters_by_name(self, names: Iterable[str]) -> list[Character]:
        return [self.character_by_name(n) for n in names]

    # -- power maps ----------------------------------------------------------

    def _prime_power_step(self, cls: ConjClass, p: int) -> Optional[ConjClass]:
        o = cls.element_order
        if p % o == 1 % o:
            return cls
        target = o // p if o % p == 0 else o
        if target == 1:
            ident = self.identity_name()
            return self._by_name[ident] if ident else None
        stored = cls.power_maps.get(p)
        if stored is not None:
            return self.class_by_name(stored)
        candidates = [c for c in self.classes if c.element_order == target]
        if len(candidates) == 1:
            return candidates[0]
        return None

    def _power_walk(self, cls: ConjClass, k: int) -> Optional[str]:
        cur = cls
        while k != 1:
            p = next(q for q in range(2, k + 1) if k % q == 0)
            nxt = self._prime_power_step(cur, p)
            if nxt is None:
                return None
            cur = nxt
            k //= p
        return cur.name

    def power_class(self, name: str, k: int) -> Optional[str]:
        """Name of the class of x^k for x in the named class, if determined.

        Uses stored prime power maps plus the two safe inferences: exponent
        killing the order lands in the identity class, and a unique class of
        the target element order must be the image.  Returns None when the
        data does not pin the class down.
        """
        cur = self.class_by_name(name)
        red = k % cur.element_order
        if red == 0:
            return self.identity_name()
        found = self._power_walk(cur, red)
        if found is None and k != red:
            # the class only depends on k mod the order, but the stored
            # prime steps may resolve the unreduced exponent instead
            found = self._power_walk(cur, k)
        return found


# ---------------------------------------------------------------------------
# parsing / rendering


def _parse_class(obj) -> ConjClass:
    try:
        name = str(obj["name"])
        order = int(obj["element_order"])
    except (KeyError, TypeError, ValueError) as exc:
        raise TableError(f"malformed class entry {obj!r}") from exc
    if order < 1:
        raise TableError(f"class {name!r} has non-positive element order {order}")
    size = obj.get("size")
    if size is not None:
        size = int(size)
        if size < 1:
            raise TableError(f"class {name!r} has non-positive size {size}")
    pm_raw = obj.get("power_maps", {})
    pmaps = {}
    for key, target in pm_raw.items():
        p = int(key)
        if not isprime(p):
            raise TableError(f"class {name!r}: power-map key {key!r} is not prime")
        pmaps[p] = str(target)
    return ConjClass(name=name, element_order=order, size=size, power_maps=pmaps)


def _parse_character(obj) -> Character:
    try:
        name = str(obj["name"])
        degree = int(obj["degree"])
        values_raw = obj["values"]
    except (KeyError, TypeError, ValueError) as exc:
        raise TableError(f"malformed character entry {obj!r}") from exc
    characteristic = int(obj.get("characteristic", 0))
    values = {}
    for cname, v in values_raw.items():
        try:
            values[str(cname)] = parse_cyc(v)
        except (TypeError, ValueError) as exc:
            raise TableError(
                f"character {name!r}: bad value on class {cname!r}: {exc}"
            ) from exc
    return Character(name=name, degree=degree, values=values, characteristic=characteristic)


def parse_table(source) -> CharacterTable:
    """Build a CharacterTable from a dict or a JSON string."""
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise TableError(f"not valid JSON: {exc}") from exc
    if not isinstance(source, dict):
        raise TableError(f"expected an object, got {type(source).__name__}")
    try:
        group_name = str(source["group_name"])
        classes = [_parse_class(c) for c in source["classes"]]
        characters = [_parse_character(c) for c in source["characters"]]
    except KeyError as exc:
        raise TableError(f"missing required key {exc}") from exc
    completeness = source.get("completeness", "full")
    if completeness not in ("full", "partial"):
        raise TableError(f"completeness must be 'full' or 'partial', got {completeness!r}")
    order = source.get("order")
    table = CharacterTable(
        group_name=group_name,
        classes=classes,
        characters=characters,
        order=int(order) if order is not None else None,
        completeness=completeness,
        notes=source.get("notes"),
    )
    _structural_check(table)
    return table


def _structural_check(table: CharacterTable) -> None:
    """Checks that must hold for the object to be usable at all."""
    names = {c.name for c in table.classes}
    idents = [c for c in table.classes if c.element_order == 1]
    if len(idents) > 1:
        raise TableError("more than one identity class")
    for c in table.classes:
        for p, target in c.power_maps.items():
            if target not in names:
                raise TableError(
                    f"class {c.name!r}: power map for {p} targets unknown class {target!r}"
                )
    for ch in table.characters:
        if ch.degree < 1:
            raise TableError(f"character {ch.name!r} has degree {ch.degree} < 1")
        if ch.characteristic and not isprime(ch.characteristic):
            raise TableError(
                f"character {ch.name!r} has non-prime characteristic {ch.characteristic}"
            )
        for cname in ch.values:
            if cname not in names:
                raise TableError(
                    f"character {ch.name!r} has a value on unknown class {cname!r}"
                )


def render_table(table: CharacterTable) -> dict:
    """Inverse of parse_table; classes come out in canonical order."""
    out: dict = {"group_name": table.group_name}
    if table.order is not None:
        out["order"] = table.order
    out["completeness"] = table.completeness
    if table.notes:
        out["notes"] = table.notes
    cls_objs = []
    for c in table.classes:
        obj: dict = {"name": c.name, "element_order": c.element_order}
        if c.size is not None:
            obj["size"] = c.size
        if c.power_maps:
            obj["power_maps"] = {str(p): c.power_maps[p] for p in sorted(c.power_maps)}
        cls_objs.append(obj)
    out["classes"] = cls_objs
    ch_objs = []
    for ch in table.characters:
        obj = {"name": ch.name, "degree": ch.degree}
        if ch.characteristic:
            obj["characteristic"] = ch.characteristic
        obj["values"] = {
            c.name: render_cyc(ch.values[c.name])
            for c in table.classes
            if c.name in ch.values
        }
        ch_objs.append(obj)
    out["characters"] = ch_objs
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    checks_run: list[str]
    problems: list[str]

    def __str__(self):
        head = "OK" if self.ok else "FAILED"
        lines = [f"validation {head} ({len(self.checks_run)} checks)"]
        lines += [f"  problem: {p}" for p in self.problems]
        return "\n".join(lines)


def _pair_sum(entries: list[tuple[CycValue, CycValue, int]]) -> CycValue:
    """Exact sum of weight * a * conj(b) without per-term canonicalization."""
    lev = 1
    nonzero = [(a, b, w) for a, b, w in entries if not a.is_zero() and not b.is_zero()]
    for a, b, _ in nonzero:
        lev = math.lcm(lev, a.conductor, b.conductor)
    raw: dict[int, Fraction] = {}
    for a, b, w in nonzero:
        sa = lev // a.conductor
        sb = lev // b.conductor
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                # conj(b): negate its exponent
                e = (ea * sa - eb * sb) % lev
                raw[e] = raw.get(e, Fraction(0)) + w * ca * cb
    return CycValue(lev, raw)


def validate(table: CharacterTable) -> ValidationReport:
    checks: list[str] = []
    problems: list[str] = []

    def check(name: str, ok: bool, detail: str = ""):
        checks.append(name)
        if not ok:
            problems.append(f"{name}: {detail}" if detail else name)

    ident = table.identity_name()
    if ident is not None:
        icls = table.class_by_name(ident)
        check("identity-size", icls.size in (None, 1), f"size {icls.size} != 1")

    for c in table.classes:
        for p, target in sorted(c.power_maps.items()):
            tcls = table.class_by_name(target)
            want = c.element_order // p if c.element_order % p == 0 else c.element_order
            check(
                f"power-map-order[{c.name}^{p}]",
                tcls.element_order == want,
                f"target {target} has order {tcls.element_order}, expected {want}",
            )

    for ch in table.characters:
        if ident is not None and ident in ch.values:
            check(
                f"degree-at-identity[{ch.name}]",
                ch.values[ident] == ch.degree,
                f"value at {ident} != degree {ch.degree}",
            )
        bad = [c for c, v in ch.values.items() if not v.is_integral()]
        check(
            f"integral-values[{ch.name}]",
            not bad,
            f"non-algebraic-integer values on {bad}",
        )
        if ch.characteristic:
            p = ch.characteristic
            singular = [
                c for c in ch.values if table.class_by_name(c).element_order % p == 0
            ]
            check(
                f"brauer-domain[{ch.name}]",
                not singular,
                f"p-singular classes {singular} carry values (characteristic {p})",
            )

    # galois consistency of stored power maps for exponents coprime to the order
    full = table.completeness == "full"
    for c in table.classes:
        for p, target in sorted(c.power_maps.items()):
            if c.element_order % p == 0 or c.element_order == 1:
                continue
            consistent = True
            for ch in table.characters:
                if ch.characteristic and ch.characteristic != 0:
                    continue
                v, w = ch.values.get(c.name), ch.values.get(target)
                if v is None or w is None:
                    continue
                if galois_apply(v, p) != w:
                    consistent = False
                    break
            check(
                f"power-map-galois[{c.name}^{p}]",
                consistent,
                f"ordinary values at {target} are not the {p}-th Galois twist",
            )

    if not full:
        return ValidationReport(ok=not problems, checks_run=checks, problems=problems)

    # ---- full tables only ---------------------------------------------------
    check("order-present", table.order is not None)
    sizes_known = all(c.size is not None for c in table.classes)
    check("sizes-present", sizes_known)
    complete_rows = all(
        set(ch.values) == {c.name for c in table.classes}
        for ch in table.characters
        if ch.characteristic == 0
    )
    check("rows-complete", complete_rows)
    if table.order is None or not sizes_known or not complete_rows:
        return ValidationReport(ok=False, checks_run=checks, problems=problems)

    g = table.order
    check(
        "class-equation",
        sum(c.size for c in table.classes) == g,
        f"sum of class sizes != group order {g}",
    )
    ordinary = [ch for ch in table.characters if ch.characteristic == 0]
    check(
        "sum-of-squared-degrees",
        sum(ch.degree**2 for ch in ordinary) == g,
        f"sum deg^2 = {sum(ch.degree ** 2 for ch in ordinary)} != {g}",
    )

    # first (row) orthogonality
    row_ok = True
    detail = ""
    for i, chi in enumerate(ordinary):
        for j in range(i, len(ordinary)):
            psi = ordinary[j]
            entries = [
                (chi.values[c.name], psi.values[c.name], c.size) for c in table.classes
            ]
            got = _pair_sum(entries)
            want = g if i == j else 0
            if got != want:
                row_ok = False
                detail = f"<{chi.name},{psi.name}> = {got!r}, expected {want}"
                break
        if not row_ok:
            break
    check("row-orthogonality", row_ok, detail)

    # second (column) orthogonality
    col_ok = True
    detail = ""
    for i, ca in enumerate(table.classes):
        for j in range(i, len(table.classes)):
            cb = table.classes[j]
            entries = [
                (ch.values[ca.name], ch.values[cb.name], 1) for ch in ordinary
            ]
            got = _pair_sum(entries)
            want = g // ca.size if i == j else 0
            if got != want:
                col_ok = False
                detail = f"columns {ca.name},{cb.name}: {got!r}, expected {want}"
                break
        if not col_ok:
            break
    check("column-orthogonality", col_ok, detail)

    return ValidationReport(ok=not problems, checks_run=checks, problems=problems)


# ---------------------------------------------------------------------------
# unit character values and augmentation chains


def unit_character_value(
    character: Character, augmentations: Mapping[str, int], table: CharacterTable
) -> CycValue:
    """Value of a character on a unit with the given partial augmentations."""
    total = cyc_zero()
    for cname, eps in augmentations.items():
        if eps == 0:
            continue
        table.class_by_name(cname)  # existence check
        v = character.values.get(cname)
        if v is None:
            raise TableError(
                f"character {character.name!r} has no value on class {cname!r}"
            )
        total = total + eps * v
    return total


@dataclass
class PAChain:
    """Partial augmentations of u and all its proper powers, by divisor."""

    unit_order: int
    entries: dict[int, dict[str, int]]

    def levels(self) -> list[int]:
        return sorted(self.entries)

    def entry(self, m: int) -> dict[str, int]:
        return self.entries[m]

    def restricted(self, m: int) -> "PAChain":
        """Chain of the power u^(unit_order/m)."""
        if self.unit_order % m:
            raise ValueError(f"{m} does not divide the unit order {self.unit_order}")
        return PAChain(
            unit_order=m,
            entries={d: dict(self.entries[d]) for d in divisors(m) if d > 1},
        )

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for ent in self.entries.values() for v in ent.values())

    def tuple_form(self, table: CharacterTable) -> tuple[int, ...]:
        """Flatten in canonical order: divisors ascending, classes canonical."""
        out: list[int] = []
        for m in self.levels():
            ent = self.entries[m]
            for c in table.classes_of_order_dividing(m):
                out.append(ent.get(c.name, 0))
        return tuple(out)


def check_chain_shape(table: CharacterTable, chain: PAChain) -> None:
    """Structural validity: level set, class supports, augmentation sums."""
    n = chain.unit_order
    want_levels = [d for d in divisors(n) if d > 1]
    if chain.levels() != want_levels:
        raise TableError(
            f"chain levels {chain.levels()} != divisors of {n} greater than 1"
        )
    ident = table.identity_name()
    for m in want_levels:
        ent = chain.entries[m]
        allowed = {c.name for c in table.classes_of_order_dividing(m)}
        for cname, eps in ent.items():
            if cname == ident:
                raise TableError(f"level {m}: identity class carries augmentation")
            if cname not in allowed:
                raise TableError(
                    f"level {m}: class {cname!r} absent or has order not dividing {m}"
                )
            if not isinstance(eps, int):
                raise TableError(f"level {m}: augmentation {eps!r} is not an integer")
        if sum(ent.values()) != 1:
            raise TableError(
                f"level {m}: augmentations sum to {sum(ent.values())}, not 1"
            )


def parse_chain(source) -> PAChain:
    if isinstance(source, str):
        source = json.loads(source)
    try:
        n = int(source["unit_order"])
        raw = source["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise TableError(f"malformed chain {source!r}") from exc
    entries = {}
    for m, vec in raw.items():
        entries[int(m)] = {str(c): int(v) for c, v in vec.items()}
    return PAChain(unit_order=n, entries=entries)


def render_chain(chain: PAChain) -> dict:
    return {
        "unit_order": chain.unit_order,
        "entries": {
            str(m): {c: v for c, v in sorted(chain.entries[m].items())}
            for m in chain.levels()
        },
    }


def trivial_chain(table: CharacterTable, class_name: str) -> PAChain:
    """The chain of an actual group element from the named class."""
    cls = table.class_by_name(class_name)
    n = cls.element_order
    entries: dict[int, dict[str, int]] = {}
    for m in divisors(n):
        if m == 1:
            continue
        target = table.power_class(class_name, n // m)
        if target is None:
            raise TableError(
                f"power maps cannot resolve {class_name}^{n // m} in {table.group_name!r}"
            )
        vec = {c.name: 0 for c in table.classes_of_order_dividing(m)}
        vec[target] = 1
        entries[m] = vec
    return PAChain(unit_order=n, entries=entries)
