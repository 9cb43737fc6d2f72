# Base parameter set, used when a flag is left out
BASE_PARAMS = {"lambda": 1.0, "c": 1.3, "alpha": 1.0, "delta": 0.1}

# bracketed root finding
TOL_ABS = 1e-12
TOL_REL = 1e-12
MAX_ITER = 200

# exponents beyond this are evaluated in scaled form
EXP_LIMIT = 700.0

# |K_T - psi_hat(x0)| <= max(PSI_TARGET_MARGIN, DO_NOTHING_FACTOR / delta) is the boundary case
DO_NOTHING_FACTOR = 1e-9
# targets this close to psi_hat(x0) cannot be resolved by the barrier search
PSI_TARGET_MARGIN = 1e-9
PSI_BRACKET_START = 1e-8

QUAD_TOL = 1e-10
GOLDEN_TOL = 1e-10

SIM_N_PATHS = 100_000
SIM_SEED = 20240101
SIM_TMAX_FACTOR = 40.0  # t_max = factor / delta
SIM_CHUNK = 8192
# (wait, claim) pairs drawn per path at a time
SIM_BLOCK = 64
SIM_Z_FAIL = 5.0

NUMBER_FORMAT = ".17g"

# CLI grids, 'lo:hi:n' or comma separated
LAMBDA_GRID = "0:2:41"
DUAL_LAMBDA_GRID = "0:1:101"
X_GRID = "0:10:101"
T_GRID = "0:40:81"
B_LIST = "0,1,2,5,10"
SEARCH_TOL = 1e-6
