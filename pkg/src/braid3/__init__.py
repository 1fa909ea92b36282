"""Exact computation with closed 3-braids in band generators: Xu-style
shortest conjugacy forms, the trivial/fibred/nearly-fibred trichotomy
with machine-checkable fibering certificates, topmost knot Floer rank,
and a Burau/Alexander cross-checking oracle."""

from .words import (
    Word, WordError, parse_word, format_word, reduce_word, free_reduce,
    cyclic_reduce, permutation_of, component_count, mirror_word,
    inverse_word, exponent_sum, rotate, relabel,
)
from .oracle import (
    GroupFingerprint, fingerprint, equal_in_group, conjugacy_profile,
    geodesic_search, GeodesicResult,
)
from .normal import (
    XuForm, Step, to_xu_form, xu_form, xu_length, untwist, monotonicity,
    rewrite_step, replay, reconstruct_conjugator, set_checked, is_checked,
    StepBudgetExceeded, RuleApplicationError, InternalCheckError,
)

__all__ = [name for name in dir() if not name.startswith("_")]
