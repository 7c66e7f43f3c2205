"""Pairwise entropy distinctness of the maps in a joint experiment."""

import itertools
import logging
from collections.abc import Sequence

from src.constants import ENTROPY_COLLISION_TOLERANCE
from src.joint_ergodicity.models import EntropyDistinctReport, EntropyEntry, EntropyPair
from src.maps import MapFamily, MapSpec, closed_form_entropy
from src.types import Verdict

logger = logging.getLogger(__name__)

_BETA_FAMILIES = {MapFamily.BETA, MapFamily.LINEAR_MOD_ONE}


def entropy_distinct_check(
    maps: Sequence[MapSpec],
    tolerance: float = ENTROPY_COLLISION_TOLERANCE,
) -> EntropyDistinctReport:
    """Compare closed-form entropies pairwise.

    A Gauss map paired with a beta or linear mod one map whose log beta matches
    pi^2/(6 log 2) gives UNKNOWN: whether the joint limits exist is open there.
    Any other coincidence is a COLLISION.
    """
    entries = []
    for spec in maps:
        entropy = closed_form_entropy(spec)
        entries.append(
            EntropyEntry(map_name=spec.name, entropy=entropy.value, formula=entropy.formula)
        )
    collisions = []
    unknown = False
    for (first_map, first), (second_map, second) in itertools.combinations(
        zip(maps, entries, strict=True), 2
    ):
        difference = abs(first.entropy - second.entropy)
        if difference > tolerance:
            continue
        collisions.append(
            EntropyPair(first=first.map_name, second=second.map_name, difference=difference)
        )
        families = {first_map.family, second_map.family}
        if MapFamily.GAUSS in families and families & _BETA_FAMILIES:
            unknown = True
    warning = None
    if unknown:
        warning = "log beta equals the Gauss entropy pi^2/(6 log 2); the joint limit is not known"
        logger.warning(warning)
        verdict = Verdict.UNKNOWN
    elif collisions:
        verdict = Verdict.COLLISION
    else:
        verdict = Verdict.DISTINCT
    return EntropyDistinctReport(
        entries=entries, collisions=collisions, verdict=verdict, warning=warning
    )
