import os
import math
from dotenv import load_dotenv

load_dotenv()

# --- Paths and Directories ---
OUTPUT_DIR = os.getenv("PFL_OUTPUT_DIR", "results")
LOG_DIR = os.getenv("PFL_LOG_DIR", "logs")
LOG_LEVEL = os.getenv("PFL_LOG_LEVEL", "INFO")

# --- Parallelism ---
N_JOBS = int(os.getenv("PFL_JOBS", "1"))

# --- Numerical Tolerances ---
HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-10
DEGENERACY_TOL = 1e-8
BRANCH_CUT_TOL = 1e-12
ZERO_TOL = 1e-12

# --- Chain Model ---
DEFAULT_PERIOD = 5.0
DEFAULT_SITE_LAYOUT = "majorana"  # or "printed"
TROTTER_SUBSTEPS = 10_000
IDEAL_COUPLING = 0.37  # J T / 5 used when no ideal-case J is given

# --- BdG ---
K_POINTS = 201
EDGE_WEIGHT_THRESHOLD = 0.5

# --- Spectral Functions ---
SPECTRAL_DELTA = 0.05 * math.pi
FULL_SAMPLE_MAX_DIM = 1024
SAMPLED_STATES = 64
TARGET_PHASES = (0.0, math.pi / 2, -math.pi / 2, math.pi)

# --- Adiabatic Transport ---
PATH_STEPS = 64
STEP_DOUBLING_TOL = 1e-3

# --- Z_{2^n} Spin Lattices ---
MAX_LATTICE_QUBITS = 12
LATTICE_SIZE_CAPS = {1: 5, 2: 3}  # n -> largest N

# --- Figure Presets ---
FIG2_MEAN_HOPPING = 1.1875  # (J2 + Delta) / 2 in units of pi / T
FIG2_POINTS = 25
FIG1_POINTS = 101
BAND_SWEEP_SITES = 40
FIG4_REALIZATIONS = {3: 50, 4: 20, 5: 10}
FIG4_WIDTHS = (0.0, 0.02, 0.05, 0.1, 0.15, 0.2)
