"""Qualified majority voting over two alternatives.

Ballot decisions under quota rules, executable anonymity /
responsiveness / q-neutrality checks with replayable witnesses, and
exhaustive verification that those three axioms pin down exactly the
qualified majority rules on small voter counts.
"""

from .core import (
    Alternative,
    Preference,
    Profile,
    Tally,
    adjacent_transpositions,
    all_profiles,
    dual,
    is_qualified,
    meets_quota,
    permute,
    qualified_quotas,
    responsive_neighbors,
    supporters,
    tally,
)
from .rules import (
    AnonymousTableRule,
    QualifiedMajorityRule,
    TableRule,
    num_tally_classes,
    qualified_majority_rules,
    rules_equal,
    tally_class_index,
    tally_classes,
    threshold_table_rule,
)
from .axioms import (
    AxiomReport,
    Witness,
    check_anonymity,
    check_anonymity_all_permutations,
    check_neutrality,
    check_q_neutrality,
    check_responsiveness,
    replay_witness,
    run_all_checks,
)
from .verifier import (
    ContradictionWitness,
    GuardError,
    SPACE_ANONYMOUS,
    SPACE_FULL,
    SurvivorInfo,
    VerificationResult,
    enumerate_anonymous,
    enumerate_full,
    merge_profile,
    survivors_anonymous,
    survivors_full,
    unqualified_quota_contradiction,
    verify_characterization,
)

__version__ = "0.1.0"
