"""
Configuration Module - Loads settings from environment variables
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
env_path = Path(__file__).parent.parent / '.env'
load_dotenv(dotenv_path=env_path)


def _int_env(name: str, default: str):
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError:
        return raw


class Config:
    """Configuration class that loads settings from environment variables"""

    # Algebra Configuration
    LIE_MAX_LENGTH = _int_env('LIE_MAX_LENGTH', '6')
    LIE_OUTPUT_FORMAT = os.getenv('LIE_OUTPUT_FORMAT', 'human')
    LIE_ALPHABET = os.getenv('LIE_ALPHABET', 'a:-1,b:-1,e:0')

    # Verification Configuration
    LIE_RANDOM_SEED = _int_env('LIE_RANDOM_SEED', '20240601')
    LIE_FLATNESS_SAMPLES = _int_env('LIE_FLATNESS_SAMPLES', '50')
    LIE_ORACLE_SAMPLES = _int_env('LIE_ORACLE_SAMPLES', '500')

    # Application Configuration
    APP_HOST = os.getenv('APP_HOST', '0.0.0.0')
    APP_PORT = _int_env('APP_PORT', '8000')
    APP_MAX_LENGTH = _int_env('APP_MAX_LENGTH', '8')
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

    @classmethod
    def validate(cls):
        """Validate that environment-provided settings are usable"""
        problems = []
        for var in ('LIE_MAX_LENGTH', 'LIE_FLATNESS_SAMPLES', 'LIE_ORACLE_SAMPLES', 'APP_PORT', 'APP_MAX_LENGTH'):
            value = getattr(cls, var)
            if not isinstance(value, int) or value < 1:
                problems.append(f"{var} must be a positive integer (got {value!r})")
        if not isinstance(cls.LIE_RANDOM_SEED, int):
            problems.append(f"LIE_RANDOM_SEED must be an integer (got {cls.LIE_RANDOM_SEED!r})")
        if cls.LIE_OUTPUT_FORMAT not in ('human', 'json'):
            problems.append(f"LIE_OUTPUT_FORMAT must be 'human' or 'json' (got {cls.LIE_OUTPUT_FORMAT!r})")
        if cls.LOG_LEVEL.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            problems.append(f"LOG_LEVEL is not a logging level (got {cls.LOG_LEVEL!r})")

        if problems:
            raise ValueError(
                "Invalid environment configuration:\n  " + "\n  ".join(problems) +
                "\nPlease compare your .env with .env.example."
            )

    @classmethod
    def get_cli_config(cls):
        """Get command-line defaults as a dictionary"""
        return {
            'max_length': cls.LIE_MAX_LENGTH,
            'output_format': cls.LIE_OUTPUT_FORMAT,
            'alphabet': cls.LIE_ALPHABET,
        }

    @classmethod
    def get_verification_config(cls):
        """Get verification-suite settings as a dictionary"""
        return {
            'seed': cls.LIE_RANDOM_SEED,
            'flatness_samples': cls.LIE_FLATNESS_SAMPLES,
            'oracle_samples': cls.LIE_ORACLE_SAMPLES,
        }

# Validate configuration on import
Config.validate()
