import os
import json
import logging


logger = logging.getLogger(__name__)

DEFAULTS_PATH = os.path.join(os.path.dirname(__file__), 'verify-defaults.json')
CAP_ENV = 'LACUNAE_CAP'


class ConfigError(ValueError):
    pass


def read_verify_defaults(path=None):
    path = path or DEFAULTS_PATH

    try:
        with open(path, 'r') as f:
            json_data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f'cannot read verification defaults from {path}: {e}') from e

    for key in ('sweeps', 'cap', 'seed', 'resum_order'):
        if key not in json_data:
            raise ConfigError(f'{path} is missing "{key}"')

    if CAP_ENV in os.environ:
        try:
            json_data['cap'] = int(os.environ[CAP_ENV])
        except ValueError:
            raise ConfigError(f'{CAP_ENV} must be an integer, got {os.environ[CAP_ENV]!r}')
        logger.info(f'Factorial cap overridden by {CAP_ENV}: {json_data["cap"]}')

    return json_data
