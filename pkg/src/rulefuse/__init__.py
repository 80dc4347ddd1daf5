"""rulefuse: rule-based surrogate models steered by black-box feature importance.

The library induces unordered rule sets with sequential covering, either in
the standard separate-and-conquer form or object-related (one anchored rule
per instance) with growth driven by an importance-based feature ordering
exported for a black-box model, and quantifies surrogate/black-box
consistency: decision agreement (Cohen's kappa), feature-set inclusion and
ranking correlation (Kendall's tau).
"""

from .classify import predict, predict_all
from .consistency import (
    ConsistencyReport,
    average_rank,
    balanced_accuracy,
    cohen_kappa,
    consistency_report,
    kendall_tau,
    mutual_inclusion,
    quartile_summary,
)
from .dataset import (
    Attribute,
    DecisionTable,
    load_schema,
    load_table,
    replace_target,
    save_schema,
    save_table,
    split,
)
from .induction_or import (
    ExplainedRule,
    ExplanationBundle,
    GrowthConfig,
    explain_instance,
    filter_rules,
    grow_fo,
    induce_or,
)
from .induction_sc import candidate_conditions, grow, induce_sc, prune
from .quality import C2, MEASURES, PRECISION, QualityMeasure, c2, coverage, get_measure, precision
from .ranking import (
    FeatureOrdering,
    column_ordering,
    load_global_ordering,
    load_local_orderings,
    save_global_ordering,
    save_local_orderings,
    validate_ordering,
)
from .rulemodel import (
    Condition,
    Contingency,
    Rule,
    RuleSet,
    contingency,
    covers,
    load_ruleset,
    merge_conditions,
    premise_features,
    render_rule,
    rule_mask,
    save_ruleset,
)

__version__ = "0.1.0"
