import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, '') else default


def _env_float(name, default):
    value = os.environ.get(name)
    return float(value) if value not in (None, '') else default


class Config:
    """Base configuration class"""
    LOG_LEVEL = os.environ.get('MOEBIUS_LOG_LEVEL', 'INFO')
    LOG_FILE = os.environ.get('MOEBIUS_LOG_FILE', 'logs/moebius_loci.log')
    RANDOM_SEED = _env_int('MOEBIUS_RANDOM_SEED', 20240611)
    SCHEMA_VERSION = '1.0'

    # Tolerances
    CLASSIFY_TOL = 1e-12
    FIXED_POINT_TOL = 1e-10
    IDENTITY_TOL = 1e-10
    ANGLE_DEDUP_TOL = 1e-12
    DEGENERATE_ARC_LENGTH = 1e-14
    STABILITY_FATTENING = 1e-9
    TOUCH_TOL = 1e-6

    # Word search budgets
    NODE_BUDGET = _env_int('MOEBIUS_NODE_BUDGET', 10 ** 7)
    ELLIPTIC_DEPTH = 8
    INVERSE_DEPTH = 6
    BEAM_WIDTH = _env_int('MOEBIUS_BEAM_WIDTH', 512)
    REFUTE_MAX_LEN = 9
    IDENTITY_THRESHOLD = _env_float('MOEBIUS_THRESHOLD', 0.25)
    # identity approaches this close count against uniform hyperbolicity
    APPROACH_CERTIFY_DISTANCE = _env_float('MOEBIUS_APPROACH_CERTIFY', 0.05)
    EXPONENT_MAX = 12
    LOG_WINDOW = 0.05
    PERMUTATION_CAP = 10 ** 4
    MULTISET_CANDIDATES = 32
    FM_CONSTRAINT_CAP = 50000

    # Multicone search
    SEED_DEPTH = 6
    RADII_COUNT = 10
    MAX_ITER = 200
    MAX_COMPONENTS = 64
    CERT_MARGIN = 1e-7
    VERIFY_WORDS = 1000
    VERIFY_WORD_LEN = 30

    # Limit sets
    LIMIT_DEPTH = 8
    NONSD_SUB_DEPTH = 12
    HULL_GAP = 0.02
    ORBIT_BOUNDARY_TOL = 1e-3

    # Spectral
    SPECTRAL_DEPTH = 6


class QuickConfig(Config):
    """Budgets sized for interactive runs"""
    ELLIPTIC_DEPTH = 6
    INVERSE_DEPTH = 5
    SEED_DEPTH = 5
    BEAM_WIDTH = 64
    LIMIT_DEPTH = 8
    SPECTRAL_DEPTH = 6


class ThoroughConfig(Config):
    """Deeper searches for batch runs"""
    ELLIPTIC_DEPTH = 10
    INVERSE_DEPTH = 8
    SEED_DEPTH = 6
    BEAM_WIDTH = 512
    REFUTE_MAX_LEN = 12
    LIMIT_DEPTH = 10
    SPECTRAL_DEPTH = 8


class TestingConfig(QuickConfig):
    """Testing configuration"""
    LOG_FILE = None
    ELLIPTIC_DEPTH = 5
    INVERSE_DEPTH = 4
    SEED_DEPTH = 4
    BEAM_WIDTH = 32
    LIMIT_DEPTH = 7
    NONSD_SUB_DEPTH = 10
    SPECTRAL_DEPTH = 5
    VERIFY_WORDS = 200


# Configuration dictionary
config = {
    'quick': QuickConfig,
    'thorough': ThoroughConfig,
    'testing': TestingConfig,
    'default': QuickConfig
}
