"""
symloops configuration
Values come from the environment (optionally a .env file); nothing is required
"""

import os

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

DEFAULT_SEED = 20240607


class Config:
    def __init__(self):
        self.SEED = int(os.getenv('SYMLOOPS_SEED', DEFAULT_SEED))
        self.LOG_LEVEL = os.getenv('SYMLOOPS_LOG_LEVEL', 'WARNING').upper()
        self.ORDER_BOUND = int(os.getenv('SYMLOOPS_ORDER_BOUND', 200))
        self.SNF_CHECK_PRIMES = int(os.getenv('SYMLOOPS_SNF_CHECK_PRIMES', 2))
        self.ACCEPTANCE_FILE = os.getenv('SYMLOOPS_ACCEPTANCE_FILE') or None

    def as_dict(self):
        return {
            'seed': self.SEED,
            'log_level': self.LOG_LEVEL,
            'order_bound': self.ORDER_BOUND,
            'snf_check_primes': self.SNF_CHECK_PRIMES,
            'acceptance_file': self.ACCEPTANCE_FILE,
        }


config = Config()
