"""Present-biased agents planning on weighted DAGs.

Exact-rational simulation of optimal, naive, sophisticated, partially
naive, and future-biased agents; reward-driven traversability analysis;
and commitment devices, with brute-force oracles for verification.
"""

from .agents import (
    AgentKind,
    AgentSpec,
    CostTable,
    Objective,
    Step,
    TraversalTrace,
    cost_ratio,
    cost_table,
    simulate,
)
from .errors import (
    BiasOutOfRange,
    CycleDetected,
    DomainError,
    DuplicateEdge,
    InvalidGraph,
    MissingSourceOrTarget,
    NegativeWeight,
    NotFeasible,
    ParameterConstraintViolated,
    PathLimitExceeded,
    PreconditionViolated,
    SearchBudgetExceeded,
    UnknownNode,
    ZeroCollectedReward,
    ZeroOptimalCost,
)
from .goal_reward import (
    InternalCheck,
    PruneReport,
    RewardIntervalSet,
    check_internal_distribution,
    feasible_reward_set,
    find_motivating_path,
    min_internal_reward_search,
    min_reward,
    min_reward_with_deletion,
    path_for_reward,
    prune,
    traverse_with_reward,
)
from .graph import (
    Edge,
    Graph,
    Path,
    enumerate_paths,
    graph_from_dict,
    graph_to_dict,
    heaviest_path,
    shortest_path,
    to_dot,
    topological_order,
    validate,
)
from .commitment import CommitmentResult, best_zero_edge, commit_by_deletion, evaluate_plan, search_plan
from .fixtures import FAMILIES, FixtureSpec, binary_counter_bias, fixture_spec, generate, random_dag
from .oracle import OracleReport, brute_force_equilibrium_check, feasibility_grid, grid_rewards
from .rationals import fmt, rat
from .reward_seeking import reward_ratio, reward_table
from .reward_seeking import simulate as reward_simulate
from .tiebreak import DEFAULT_TIE_BREAK, TieBreakPolicy

__version__ = "0.1.0"
