"""Three-valued logic over True, False, and NA (Kleene's strong tables).

NA stands for an unknown truth value, so an operation returns NA exactly when
the unknown operand could change the answer:

    and: NA & FALSE = FALSE   (FALSE wins regardless)
         NA & TRUE  = NA
         NA & NA    = NA
    or:  NA | TRUE  = TRUE    (TRUE wins regardless)
         NA | FALSE = NA
         NA | NA    = NA
    not: !NA = NA
"""

from __future__ import annotations

from typing import Union

from ..model import NA, NAType, is_na

Logical = Union[bool, NAType]


def and3(a: Logical, b: Logical) -> Logical:
    if a is False or b is False:
        return False
    if is_na(a) or is_na(b):
        return NA
    return True


def or3(a: Logical, b: Logical) -> Logical:
    if a is True or b is True:
        return True
    if is_na(a) or is_na(b):
        return NA
    return False


def not3(a: Logical) -> Logical:
    if is_na(a):
        return NA
    return not a
