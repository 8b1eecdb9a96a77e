__all__ = [
    "YES",
    "NO",
    "UNKNOWN",
    "ERROR",
    "BUDGET",
    "DELEGATED",
    "INCONCLUSIVE",
    "FEASIBLE",
    "INFEASIBLE",
    "ALGORITHM_TAGS",
]

# Solver outcomes
YES = "yes"
NO = "no"
BUDGET = "budget"
DELEGATED = "delegated"
INCONCLUSIVE = "inconclusive"

# Integer program outcomes
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"

# Report answers
UNKNOWN = "unknown"
ERROR = "error"

ALGORITHM_TAGS = (
    "oracle",
    "clique",
    "cograph",
    "treewidth",
    "nd",
    "mw",
    "dclique",
    "dcluster",
    "vi",
    "3pvc",
)
