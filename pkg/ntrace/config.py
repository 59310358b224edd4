import os


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, '') else default


class Config:
    # Randomized checks
    DEFAULT_SEED = _env_int('NTRACE_SEED', 0)
    DEFAULT_TRIALS = _env_int('NTRACE_TRIALS', 100)
    DEFAULT_DIM = _env_int('NTRACE_DIM', 8)

    # Desk-scale limits
    MAX_DIM = _env_int('NTRACE_MAX_DIM', 256)
    MEASURE_GROUND_CAP = _env_int('NTRACE_MEASURE_GROUND_CAP', 12)
    JACOBI_MAX_SWEEPS = _env_int('NTRACE_JACOBI_MAX_SWEEPS', 100)

    # Logging
    LOG_LEVEL = os.environ.get('NTRACE_LOG_LEVEL', 'WARNING')
    LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'

    # HTTP API rate limiting
    RATELIMIT_STORAGE_URI = 'memory://'
    RATELIMIT_EXPENSIVE = '10 per minute'

    # Suite exports
    EXPORT_FOLDER = os.environ.get('NTRACE_EXPORT_FOLDER', 'exports')

    # Request bodies carry whole matrices
    MAX_CONTENT_LENGTH = 16 * 1024 * 1024


class DevelopmentConfig(Config):
    DEBUG = True
    LOG_LEVEL = os.environ.get('NTRACE_LOG_LEVEL', 'INFO')


class ProductionConfig(Config):
    DEBUG = False


class TestingConfig(Config):
    TESTING = True
    DEFAULT_TRIALS = 20
    DEFAULT_DIM = 4
    RATELIMIT_ENABLED = False


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': ProductionConfig
}


def get_config(name=None):
    """Resolve a configuration class by name or from NTRACE_CONFIG"""
    name = name or os.environ.get('NTRACE_CONFIG', 'default')
    try:
        return config[name]
    except KeyError:
        from ntrace.errors import UsageError
        raise UsageError(f"Unknown configuration '{name}'", available=sorted(config))
