"""Constraint systems for torsion units of a prescribed order.

A normalized torsion unit u of order n in an integral group ring has a
partial augmentation eps_C(u^d) at every conjugacy class C and every
divisor d of n, and classical vanishing results leave only the classes
whose element order divides n in play.  Every character chi then pins
the data down through eigenvalue multiplicities: writing D for the
degree, the quantity

    n * mult_k(chi, u)  =  sum_{d | n}  Tr( chi(u^d) * zeta_{n/d}^{-k} )

must, for each k mod n, be a nonnegative multiple of n.  Each trace is
taken from the full cyclotomic field at level n/d (the level matters:
only then do the n quantities sum to n*D).  The d = n term is the
degree; terms with 1 < d < n are integers once the partial
augmentations of the proper powers u^d are fixed; the d = 1 term is an
integer linear form in the unknown top-level partial augmentations.
So each (chi, k) yields one linear inequality and one congruence mod n
with integer coefficients, and the unit's augmentation itself
contributes the equality sum(eps) = 1.

On top of the multiplicity rows sit prime-power congruences: for every
prime p | n and every class C,

    sum_{K : K^p = C} eps_K(u)  ==  eps_C(u^p)   (mod p).

When the table carries enough power-map data to resolve K -> K^p for
every class in the support, the congruence is emitted per class
("class" mode).  Otherwise the rows are first summed over all classes
of a fixed element order, which eliminates the power maps entirely
("order" mode): for o dividing n/p,

    eps~_{p*o}(u) + [p does not divide o] * eps~_o(u)
        ==  eps~_o(u^p)   (mod p),

where eps~_o is the sum of the partial augmentations over the classes
of element order exactly o.

Systems are solved by exact integer enumeration (`lattice`).  Orders
are solved recursively: the chains of u^p for each prime p | n are
enumerated first, compatible combinations fix the power data, and each
combination leaves a system in the top-level unknowns.  For orders s*t
with a large prime s one can instead collapse all order-s classes into
a single aggregated unknown, which is sound whenever every character
in use is constant on the order-s classes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .chartab import (
    Character,
    CharacterTable,
    PAChain,
    TableError,
    check_chain_shape,
)
from .cyclo import cyc_zero, divisors, prime_divisors, root_trace_table, terms_at_level
from .lattice import (
    DEFAULT_CAP,
    EnumerationResult,
    Polyhedron,
    enumerate_integer_points,
)

__all__ = [
    "EngineError",
    "Row",
    "ConstraintSystem",
    "SolutionSet",
    "VerifyReport",
    "build_system",
    "build_chain_system",
    "solve_order",
    "solve_s_constant",
    "verify_chain",
    "classify_chain",
]

AGGREGATE_PREFIX = "~"

# above this many sub-chain combinations, solve_order switches from the
# per-power recursion to the joint all-levels system
_JOINT_COMBO_LIMIT = 4096


class EngineError(ValueError):
    pass


@dataclass(frozen=True)
class Row:
    """One integer constraint: coeffs . x + const  (>= 0 | == 0 | == 0 mod modulus)."""

    coeffs: tuple[int, ...]
    const: int
    kind: str  # "ge" | "eq" | "cong"
    modulus: Optional[int]
    provenance: str


@dataclass
class ConstraintSystem:
    table_name: str
    unit_order: int
    variables: tuple[str, ...]
    rows: list[Row]
    character_names: tuple[str, ...]
    congruence_mode: dict[int, str] = field(default_factory=dict)

    def polyhedron(self) -> Polyhedron:
        ineqs, eqs, congs = [], [], []
        for r in self.rows:
            if r.kind == "ge":
                ineqs.append((r.coeffs, r.const))
            elif r.kind == "eq":
                eqs.append((r.coeffs, r.const))
            elif r.kind == "cong":
                congs.append((r.coeffs, r.const, r.modulus))
            else:  # pragma: no cover - Row construction is internal
                raise EngineError(f"unknown row kind {r.kind!r}")
        return Polyhedron(
            dim=len(self.variables), ineqs=ineqs, eqs=eqs, congruences=congs
        )

    def solve(self, cap: Optional[int] = None) -> EnumerationResult:
        return enumerate_integer_points(self.polyhedron(), cap=cap)

    def check_point(self, values: Mapping[str, int]) -> list[str]:
        """Provenance strings of every row the given assignment violates."""
        unknown = set(values) - set(self.variables)
        if unknown:
            raise EngineError(
                f"assignment mentions unknown variables {sorted(unknown)}"
            )
        x = [int(values.get(v, 0)) for v in self.variables]
        bad = []
        for r in self.rows:
            val = sum(a * xi for a, xi in zip(r.coeffs, x)) + r.const
            if r.kind == "ge":
                ok = val >= 0
            elif r.kind == "eq":
                ok = val == 0
            else:
                ok = val % r.modulus == 0
            if not ok:
                bad.append(f"{r.provenance}: value {val}")
        return bad


def _resolve_chars(
    table: CharacterTable, characters: Sequence[Union[str, Character]]
) -> list[Character]:
    out = []
    for c in characters:
        out.append(table.character_by_name(c) if isinstance(c, str) else c)
    return out


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise EngineError(f"{what} came out non-integral ({x}); table data is corrupt")
    return int(x)


def _key_order(table: CharacterTable, key: str) -> int:
    if key.startswith(AGGREGATE_PREFIX):
        return int(key[len(AGGREGATE_PREFIX):])
    return table.class_by_name(key).element_order


def _entry_value(ch: Character, entry: Mapping[str, int], table: CharacterTable):
    """chi evaluated on a unit with the given (possibly aggregated) augmentations."""
    total = cyc_zero()
    for key, eps in entry.items():
        if not eps:
            continue
        if key.startswith(AGGREGATE_PREFIX):
            o = int(key[len(AGGREGATE_PREFIX):])
            vals = {ch.values.get(c.name) for c in table.classes if c.element_order == o}
            if None in vals:
                raise EngineError(
                    f"character {ch.name!r} lacks a value on some class of order {o}"
                )
            if len(vals) != 1:
                raise EngineError(
                    f"character {ch.name!r} is not constant on the order-{o} classes; "
                    f"the aggregated entry {key!r} is meaningless for it"
                )
            total = total + eps * vals.pop()
        else:
            v = ch.values.get(key)
            if v is None:
                raise TableError(
                    f"character {ch.name!r} has no value on class {key!r}"
                )
            total = total + eps * v
    return total


def build_system(
    table: CharacterTable,
    characters: Sequence[Union[str, Character]],
    order: int,
    powers: Optional[Mapping[int, Mapping[str, int]]] = None,
    *,
    congruences: str = "power",
    collapse_order: Optional[int] = None,
    dedupe: bool = True,
) -> ConstraintSystem:
    """Integer constraint system for the top-level partial augmentations.

    `powers` maps each order m of a proper power (1 < m < order, m | order)
    to that power's partial augmentations; all such m must be present.
    Entries may use an aggregated key "~s" for "total over the order-s
    classes" provided every character in use is constant on those classes.
    `collapse_order=s` replaces the order-s unknowns by one aggregated
    unknown named "~s" under the same constancy requirement.
    """
    n = int(order)
    if n < 2:
        raise EngineError(f"unit order must be at least 2, got {n}")
    if congruences not in ("power", "none"):
        raise EngineError(f"congruences must be 'power' or 'none', got {congruences!r}")
    chars = _resolve_chars(table, characters)
    if not chars:
        raise EngineError("need at least one character")
    for ch in chars:
        if ch.characteristic and n % ch.characteristic == 0:
            raise EngineError(
                f"character {ch.name!r} has characteristic {ch.characteristic}, "
                f"which divides the unit order {n}"
            )
    support = table.classes_of_order_dividing(n)
    if not support:
        raise EngineError(
            f"table {table.group_name!r} has no classes of order dividing {n}"
        )
    powers = {int(m): dict(v) for m, v in (powers or {}).items()}
    missing = [m for m in divisors(n) if 1 < m < n and m not in powers]
    if missing:
        raise EngineError(f"missing partial augmentations for power orders {missing}")

    # -- variables ------------------------------------------------------------
    agg_name = None
    if collapse_order is not None:
        s = int(collapse_order)
        agg_name = f"{AGGREGATE_PREFIX}{s}"
        covered = [c for c in support if c.element_order == s]
        if not covered:
            raise EngineError(f"no classes of order {s} to collapse")
        for ch in chars:
            vals = {ch.values.get(c.name) for c in covered}
            if None in vals:
                raise EngineError(
                    f"character {ch.name!r} lacks a value on some order-{s} class"
                )
            if len(vals) != 1:
                raise EngineError(
                    f"character {ch.name!r} is not constant on the order-{s} "
                    f"classes; cannot collapse them"
                )
    variables: list[str] = []
    var_rep: dict[str, str] = {}
    var_order: dict[str, int] = {}
    for c in support:
        if agg_name is not None and c.element_order == collapse_order:
            if agg_name not in var_order:
                variables.append(agg_name)
                var_rep[agg_name] = c.name
                var_order[agg_name] = c.element_order
            continue
        variables.append(c.name)
        var_rep[c.name] = c.name
        var_order[c.name] = c.element_order
    nvars = len(variables)

    # -- multiplicity rows ----------------------------------------------------
    trace_tab = {m: root_trace_table(m) for m in divisors(n)}
    rows: list[Row] = []
    for ch in chars:
        coef_terms = []
        for v in variables:
            val = ch.values.get(var_rep[v])
            if val is None:
                raise EngineError(
                    f"character {ch.name!r} has no value on class {var_rep[v]!r}"
                )
            if not val.is_integral():
                raise EngineError(
                    f"character {ch.name!r} value on {var_rep[v]!r} is not an "
                    f"algebraic integer"
                )
            coef_terms.append(terms_at_level(val, n))
        const_terms: list[tuple[int, list]] = [(1, [(0, Fraction(ch.degree))])]
        for m in divisors(n):
            if m == 1 or m == n:
                continue  # m is the order of the proper power u^(n/m)
            val = _entry_value(ch, powers[m], table)
            const_terms.append((m, terms_at_level(val, m)))
        for k in range(n):
            tab_n = trace_tab[n]
            coeffs = tuple(
                _as_int(
                    sum((c * tab_n[(e - k) % n] for e, c in terms), Fraction(0)),
                    f"coefficient of {v} in {ch.name}, k={k}",
                )
                for v, terms in zip(variables, coef_terms)
            )
            base = Fraction(0)
            for lvl, terms in const_terms:
                tab = trace_tab[lvl]
                base += sum((c * tab[(e - k) % lvl] for e, c in terms), Fraction(0))
            const = _as_int(base, f"constant of {ch.name}, k={k}")
            prov = f"{ch.name}:mult[{k}]"
            rows.append(Row(coeffs, const, "ge", None, prov))
            rows.append(Row(coeffs, const, "cong", n, prov + f"%{n}"))

    ones = tuple(1 for _ in range(nvars))
    rows.append(Row(ones, -1, "eq", None, "augmentation"))

    # -- prime-power congruences ----------------------------------------------
    mode: dict[int, str] = {}
    if congruences == "power":
        for p in prime_divisors(n):
            prows, pmode = _power_congruence_rows(
                table, n, p, variables, var_order, powers, agg_name
            )
            rows.extend(prows)
            mode[p] = pmode

    if dedupe:
        seen = set()
        kept = []
        for r in rows:
            key = (r.kind, r.coeffs, r.const, r.modulus)
            if key not in seen:
                seen.add(key)
                kept.append(r)
        rows = kept

    return ConstraintSystem(
        table_name=table.group_name,
        unit_order=n,
        variables=tuple(variables),
        rows=rows,
        character_names=tuple(ch.name for ch in chars),
        congruence_mode=mode,
    )


def _power_congruence_rows(table, n, p, variables, var_order, powers, agg_name):
    """Rows for the prime p, in class mode when resolvable, else order mode."""
    m = n // p
    nvars = len(variables)
    sub = powers.get(m, {})  # empty exactly when m == 1

    class_mode = agg_name is None and not any(
        k.startswith(AGGREGATE_PREFIX) for k in sub
    )
    pclass = {}
    if class_mode:
        for v in variables:
            tgt = table.power_class(v, p)
            if tgt is None:
                class_mode = False
                break
            pclass[v] = tgt

    rows = []
    if class_mode:
        targets = table.classes_of_order_dividing(m, include_identity=True)
        for c in targets:
            coeffs = tuple(1 if pclass[v] == c.name else 0 for v in variables)
            if c.element_order == 1:
                rhs = 1 if m == 1 else 0
            else:
                rhs = int(sub.get(c.name, 0))
            rows.append(Row(coeffs, -rhs, "cong", p, f"power[{p}]:{c.name}"))
        return rows, "class"

    for o in divisors(m):
        if o == 1:
            rhs = 1 if m == 1 else 0
        else:
            rhs = sum(
                int(eps) for key, eps in sub.items() if _key_order(table, key) == o
            )
        lift = o * p
        coeffs = tuple(
            1 if var_order[v] == lift or (o % p and var_order[v] == o) else 0
            for v in variables
        )
        rows.append(Row(coeffs, -rhs, "cong", p, f"power[{p}]:order[{o}]"))
    return rows, "order"


def build_chain_system(
    table: CharacterTable,
    characters: Sequence[Union[str, Character]],
    order: int,
    *,
    congruences: str = "power",
    dedupe: bool = True,
) -> ConstraintSystem:
    """One system over the augmentations of u *and all its proper powers*.

    Variables are named "<level>:<class>" for every divisor level > 1 of
    the unit order.  Every constraint of every level is linear in these:
    the order-m/d power of u^(order/m) is u^(order/(m/d)), so the trace
    terms that `build_system` folds into constants become coefficient
    blocks on the lower-level variables.  Solving this in one sweep lets
    bounds flow across levels, which matters when some proper power is
    badly underdetermined on its own.
    """
    n = int(order)
    if n < 2:
        raise EngineError(f"unit order must be at least 2, got {n}")
    if congruences not in ("power", "none"):
        raise EngineError(f"congruences must be 'power' or 'none', got {congruences!r}")
    chars = _resolve_chars(table, characters)
    if not chars:
        raise EngineError("need at least one character")
    for ch in chars:
        if ch.characteristic and n % ch.characteristic == 0:
            raise EngineError(
                f"character {ch.name!r} has characteristic {ch.characteristic}, "
                f"which divides the unit order {n}"
            )

    levels = [m for m in divisors(n) if m > 1]
    level_classes: dict[int, list[str]] = {}
    for m in levels:
        support = table.classes_of_order_dividing(m)
        if not support:
            raise EngineError(
                f"table {table.group_name!r} has no classes of order dividing {m}"
            )
        level_classes[m] = [c.name for c in support]
    variables: list[str] = []
    index: dict[tuple[int, str], int] = {}
    for m in levels:
        for cname in level_classes[m]:
            index[(m, cname)] = len(variables)
            variables.append(f"{m}:{cname}")
    nvars = len(variables)

    trace_tab = {m: root_trace_table(m) for m in divisors(n)}
    term_cache: dict[tuple[str, int, str], list] = {}

    def terms(ch, lvl, cname):
        key = (ch.name, lvl, cname)
        if key not in term_cache:
            val = ch.values.get(cname)
            if val is None:
                raise EngineError(
                    f"character {ch.name!r} has no value on class {cname!r}"
                )
            if not val.is_integral():
                raise EngineError(
                    f"character {ch.name!r} value on {cname!r} is not an "
                    f"algebraic integer"
                )
            term_cache[key] = terms_at_level(val, lvl)
        return term_cache[key]

    rows: list[Row] = []
    for m in levels:
        subs = [l for l in divisors(m) if l > 1]
        for ch in chars:
            for k in range(m):
                coeffs = [0] * nvars
                for l in subs:
                    tab = trace_tab[l]
                    for cname in level_classes[l]:
                        acc = sum(
                            (c * tab[(e - k) % l] for e, c in terms(ch, l, cname)),
                            Fraction(0),
                        )
                        coeffs[index[(l, cname)]] += _as_int(
                            acc, f"coefficient of {l}:{cname} in {ch.name}, k={k}"
                        )
                prov = f"{ch.name}:mult[{k}]@{m}"
                row = tuple(coeffs)
                rows.append(Row(row, ch.degree, "ge", None, prov))
                rows.append(Row(row, ch.degree, "cong", m, prov + f"%{m}"))
        aug = tuple(
            1 if v in {index[(m, c)] for c in level_classes[m]} else 0
            for v in range(nvars)
        )
        rows.append(Row(aug, -1, "eq", None, f"augmentation@{m}"))

    mode: dict[int, str] = {}
    if congruences == "power":
        for m in levels:
            for p in prime_divisors(m):
                prows, pmode = _joint_power_rows(
                    table, m, p, level_classes, index, nvars
                )
                rows.extend(prows)
                if mode.get(p) != "order":  # report the weakest level's mode
                    mode[p] = pmode

    if dedupe:
        seen = set()
        kept = []
        for r in rows:
            key = (r.kind, r.coeffs, r.const, r.modulus)
            if key not in seen:
                seen.add(key)
                kept.append(r)
        rows = kept

    return ConstraintSystem(
        table_name=table.group_name,
        unit_order=n,
        variables=tuple(variables),
        rows=rows,
        character_names=tuple(ch.name for ch in chars),
        congruence_mode=mode,
    )


def _joint_power_rows(table, m, p, level_classes, index, nvars):
    """Prime-power congruences at one level of the joint system: the
    level-(m/p) data enters with coefficient -1 instead of as constants."""
    l = m // p
    names = level_classes[m]

    pclass = {}
    class_mode = True
    for cname in names:
        tgt = table.power_class(cname, p)
        if tgt is None:
            class_mode = False
            break
        pclass[cname] = tgt

    rows = []
    if class_mode:
        targets = table.classes_of_order_dividing(l, include_identity=True)
        for c in targets:
            coeffs = [0] * nvars
            for cname in names:
                if pclass[cname] == c.name:
                    coeffs[index[(m, cname)]] += 1
            if c.element_order == 1:
                const = -1 if l == 1 else 0
            else:
                coeffs[index[(l, c.name)]] -= 1
                const = 0
            rows.append(
                Row(tuple(coeffs), const, "cong", p, f"power[{p}]:{c.name}@{m}")
            )
        return rows, "class"

    for o in divisors(l):
        coeffs = [0] * nvars
        for cname in names:
            co = table.class_by_name(cname).element_order
            if co == o * p or (o % p and co == o):
                coeffs[index[(m, cname)]] += 1
        if o == 1:
            const = -1 if l == 1 else 0
        else:
            for cname in level_classes[l]:
                if table.class_by_name(cname).element_order == o:
                    coeffs[index[(l, cname)]] -= 1
            const = 0
        rows.append(
            Row(tuple(coeffs), const, "cong", p, f"power[{p}]:order[{o}]@{m}")
        )
    return rows, "order"


# ---------------------------------------------------------------------------
# recursive order solving


@dataclass
class SolutionSet:
    table_name: str
    unit_order: int
    status: str  # "finite" | "infinite" | "capped"
    chains: tuple[PAChain, ...]
    character_names: tuple[str, ...]
    strategy: str = "plain"
    congruence_modes: tuple[str, ...] = ()
    combos: int = 0
    detail: Optional[str] = None
    ray: Optional[dict[str, int]] = None


def _chain_key(chain: PAChain):
    return tuple(
        (m, tuple(sorted(chain.entries[m].items()))) for m in chain.levels()
    )


def _merge_chain_levels(combo: Sequence[PAChain]) -> Optional[dict[int, dict[str, int]]]:
    merged: dict[int, dict[str, int]] = {}
    for ch in combo:
        for m, ent in ch.entries.items():
            if m in merged:
                if merged[m] != ent:
                    return None
            else:
                merged[m] = dict(ent)
    return merged


def _solve_order_joint(
    table: CharacterTable,
    chars: Sequence[Character],
    n: int,
    *,
    congruences: str,
    cap: int,
    reason: str,
) -> SolutionSet:
    names = tuple(ch.name for ch in chars)
    system = build_chain_system(table, chars, n, congruences=congruences)
    res = system.solve(cap=cap)
    if res.status == "infinite":
        ray = {v: r for v, r in zip(system.variables, res.ray) if r}
        return SolutionSet(
            table.group_name, n, "infinite", (), names,
            strategy="joint",
            congruence_modes=tuple(sorted(set(system.congruence_mode.values()))),
            detail=f"{reason}; the joint system admits an integer ray",
            ray=ray,
        )
    chains = []
    for pt in res.points:
        entries: dict[int, dict[str, int]] = {}
        for v, x in zip(system.variables, pt):
            lvl, cname = v.split(":", 1)
            entries.setdefault(int(lvl), {})[cname] = x
        chains.append(PAChain(unit_order=n, entries=entries))
    chains.sort(key=_chain_key)
    capped = res.status == "capped"
    return SolutionSet(
        table_name=table.group_name,
        unit_order=n,
        status="capped" if capped else "finite",
        chains=tuple(chains),
        character_names=names,
        strategy="joint",
        congruence_modes=tuple(sorted(set(system.congruence_mode.values()))),
        combos=0,
        detail=(f"{reason}; joint enumeration stopped beyond {cap} chains"
                if capped else f"solved jointly across levels ({reason})"),
    )


def solve_order(
    table: CharacterTable,
    characters: Sequence[Union[str, Character]],
    order: int,
    *,
    congruences: str = "power",
    cap: Optional[int] = None,
    store: Optional[dict] = None,
) -> SolutionSet:
    """All chains of partial augmentations for units of the given order.

    Proper-power orders are solved first (memoized in `store`), compatible
    combinations of their chains fix the constants, and each combination's
    system is enumerated exactly.
    """
    n = int(order)
    chars = _resolve_chars(table, characters)
    names = tuple(ch.name for ch in chars)
    if store is None:
        store = {}
    if n in store:
        return store[n]
    cap = DEFAULT_CAP if cap is None else int(cap)

    sub_orders = sorted({n // p for p in prime_divisors(n)} - {1})
    sub_chain_sets = []
    for m in sub_orders:
        ss = solve_order(
            table, chars, m, congruences=congruences, cap=cap, store=store
        )
        if ss.status == "capped":
            # a proper power is badly underdetermined on its own; solve
            # the whole chain as one system so the level-n rows prune it
            out = _solve_order_joint(
                table, chars, n, congruences=congruences, cap=cap,
                reason=f"order-{m} power alone exceeded the cap",
            )
            store[n] = out
            return out
        if ss.status != "finite":
            out = SolutionSet(
                table.group_name, n, ss.status, (), names,
                detail=f"chains of the order-{m} power could not be enumerated "
                       f"({ss.status})",
                ray=ss.ray,
            )
            store[n] = out
            return out
        sub_chain_sets.append(ss.chains)

    combo_bound = math.prod(len(s) for s in sub_chain_sets)
    if combo_bound > _JOINT_COMBO_LIMIT:
        out = _solve_order_joint(
            table, chars, n, congruences=congruences, cap=cap,
            reason=f"{combo_bound} power-chain combinations",
        )
        store[n] = out
        return out

    chains: list[PAChain] = []
    status = "finite"
    modes: set[str] = set()
    combos = 0
    detail = None
    ray = None
    for combo in itertools.product(*sub_chain_sets):
        merged = _merge_chain_levels(combo)
        if merged is None:
            continue
        combos += 1
        system = build_system(
            table, chars, n, merged, congruences=congruences
        )
        modes.update(system.congruence_mode.values())
        res = system.solve(cap=cap)
        if res.status == "infinite":
            status = "infinite"
            detail = "a top-level system admits an integer ray"
            ray = {v: r for v, r in zip(system.variables, res.ray) if r}
            chains = []
            break
        for pt in res.points:
            entries = {m: dict(ent) for m, ent in merged.items()}
            entries[n] = {v: x for v, x in zip(system.variables, pt)}
            chains.append(PAChain(unit_order=n, entries=entries))
        if res.status == "capped" or len(chains) > cap:
            status = "capped"
            detail = f"enumeration stopped beyond {cap} chains"
            break

    chains.sort(key=_chain_key)
    out = SolutionSet(
        table_name=table.group_name,
        unit_order=n,
        status=status,
        chains=tuple(chains),
        character_names=names,
        strategy="plain",
        congruence_modes=tuple(sorted(modes)),
        combos=combos,
        detail=detail,
        ray=ray,
    )
    store[n] = out
    return out


def solve_s_constant(
    table: CharacterTable,
    characters: Sequence[Union[str, Character]],
    s: int,
    t: int,
    *,
    congruences: str = "power",
    cap: Optional[int] = None,
) -> SolutionSet:
    """Chains for order s*t with the order-s classes aggregated into one unknown.

    Sound when every character in use is constant on the order-s classes
    and the table has no classes of order s*t: then no row can tell the
    order-s partial augmentations apart, so only their total matters.
    The order-s power data collapses to "~s": 1 (its augmentation is 1).
    """
    s, t = int(s), int(t)
    if s == t or tuple(prime_divisors(s)) != (s,) or tuple(prime_divisors(t)) != (t,):
        raise EngineError(f"need two distinct primes, got s={s}, t={t}")
    n = s * t
    chars = _resolve_chars(table, characters)
    names = tuple(ch.name for ch in chars)
    if any(c.element_order == n for c in table.classes):
        raise EngineError(
            f"table {table.group_name!r} has classes of order {n}; the "
            f"aggregated strategy does not apply"
        )
    for o, label in ((s, "s"), (t, "t")):
        if not any(c.element_order == o for c in table.classes):
            raise EngineError(
                f"table {table.group_name!r} has no classes of order {o} ({label})"
            )

    sub_t = solve_order(table, chars, t, congruences=congruences, cap=cap)
    if sub_t.status != "finite":
        return SolutionSet(
            table.group_name, n, sub_t.status, (), names,
            strategy=f"collapse[{s}]",
            detail=f"chains of the order-{t} power could not be enumerated "
                   f"({sub_t.status})",
            ray=sub_t.ray,
        )

    agg = f"{AGGREGATE_PREFIX}{s}"
    cap_eff = DEFAULT_CAP if cap is None else int(cap)
    chains: list[PAChain] = []
    status = "finite"
    modes: set[str] = set()
    combos = 0
    detail = None
    ray = None
    for chain_t in sub_t.chains:
        powers = {t: dict(chain_t.entry(t)), s: {agg: 1}}
        combos += 1
        system = build_system(
            table, chars, n, powers,
            congruences=congruences, collapse_order=s,
        )
        modes.update(system.congruence_mode.values())
        res = system.solve(cap=cap)
        if res.status == "infinite":
            status = "infinite"
            detail = "a top-level system admits an integer ray"
            ray = {v: r for v, r in zip(system.variables, res.ray) if r}
            chains = []
            break
        for pt in res.points:
            entries = {
                t: dict(chain_t.entry(t)),
                s: {agg: 1},
                n: {v: x for v, x in zip(system.variables, pt)},
            }
            chains.append(PAChain(unit_order=n, entries=entries))
        if res.status == "capped" or len(chains) > cap_eff:
            status = "capped"
            detail = f"enumeration stopped beyond {cap_eff} chains"
            break

    chains.sort(key=_chain_key)
    return SolutionSet(
        table_name=table.group_name,
        unit_order=n,
        status=status,
        chains=tuple(chains),
        character_names=names,
        strategy=f"collapse[{s}]",
        congruence_modes=tuple(sorted(modes)),
        combos=combos,
        detail=detail,
        ray=ray,
    )


# ---------------------------------------------------------------------------
# chain checking


@dataclass
class VerifyReport:
    ok: bool
    rows_checked: int
    failures: list[tuple[int, str]]  # (level, "provenance: value v")


def verify_chain(
    table: CharacterTable,
    characters: Sequence[Union[str, Character]],
    chain: PAChain,
    *,
    congruences: str = "power",
) -> VerifyReport:
    """Re-derive every constraint at every level of the chain and check it."""
    check_chain_shape(table, chain)
    chars = _resolve_chars(table, characters)
    failures: list[tuple[int, str]] = []
    checked = 0
    for m in chain.levels():
        powers = {d: chain.entry(d) for d in divisors(m) if 1 < d < m}
        system = build_system(
            table, chars, m, powers, congruences=congruences
        )
        entry = {k: v for k, v in chain.entry(m).items() if v}
        checked += len(system.rows)
        for fail in system.check_point(entry):
            failures.append((m, fail))
    return VerifyReport(ok=not failures, rows_checked=checked, failures=failures)


def classify_chain(chain: PAChain) -> str:
    """"trivial" when the chain could come from a group element (all entries
    nonnegative, hence every power rationally conjugate to one); else
    "nontrivial"."""
    return "trivial" if chain.is_nonnegative() else "nontrivial"
