# GENERATION
DEFAULT_FLOW_LIMIT = 2**20
TREE_PAIR_SCAN_LIMIT = 4096

# CENSUS CAPS
# cycle rank without loops; loops contribute an independent factor
CENSUS_RANK_CAP_LARGE_GROUP = 16
CENSUS_RANK_CAP_SMALL_GROUP = 20
SMALL_GROUP_ORDER = 4
POLYNOMIAL_EDGE_CAP = 24

# Z3 SEARCH ORACLE
SEARCH_FREE_EDGE_CAP = 30
SEARCH_NODE_BUDGET = 2_000_000
EXHAUSTIVE_CUT_SCAN_MAX_VERTICES = 16
DIRECT_CASE_MAX_VERTICES = 14

# FAMILIES
RANDOM_FAMILY_MAX_ATTEMPTS = 1000

# VERIFY
VERIFY_CENSUS_LIMIT = 100_000
