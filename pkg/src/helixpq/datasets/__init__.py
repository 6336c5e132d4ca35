"""Embedded character-table fragments shipped with the package.

Each JSON file holds one (mostly partial) table in the `chartab` text
format.  `load_embedded(name)` parses it into a CharacterTable; the
tables carry `notes` explaining any representational quirks.
"""

from importlib import resources

from ..chartab import CharacterTable, TableError, parse_table

__all__ = ["list_embedded", "load_embedded"]

_NAMES = (
    "l3_17_aut_partial",
    "pgl2_243_rows",
    "pgl2_3f_rows",
    "psl2_2f_rows",
    "psl2_2f_rows_f4",
    "psl2_3f_eta",
    "psp4_7_aut_partial",
    "psp4_7_partial",
)


def list_embedded() -> tuple[str, ...]:
    return _NAMES


def load_embedded(name: str) -> CharacterTable:
    if name not in _NAMES:
        raise TableError(
            f"no embedded dataset {name!r}; available: {', '.join(_NAMES)}"
        )
    text = resources.files(__package__).joinpath(f"{name}.json").read_text()
    return parse_table(text)
