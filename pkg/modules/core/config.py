"""
Configuration for leibniz_lab.
Contains seeds, sample counts, worker limits and logging defaults.
"""

import json
import os

from dotenv import load_dotenv

from modules.core.errors import SchemaError

load_dotenv()

# Randomized property suites
default_seed = 20240229
property_samples = 50  # samples per n for the constraint/oracle equivalence
mu_samples = 100  # random μ tuples checked for the Leibniz identity
normalize_samples = 200  # random μ tuples pushed through the normalizer

# Parallel residual scans (capped by LEIBNIZ_LAB_THREADS)
max_workers = 1

# Logging
log_level = "INFO"
log_file = None  # e.g. "logs/leibniz_lab.log"

# File paths
output_dir = "outputs"

# Fock defaults: D = factor * n when no degree is given
fock_default_degree_factor = 3


def _workers_from_env():
    value = os.getenv("LEIBNIZ_LAB_THREADS")
    if not value:
        return None
    try:
        workers = int(value)
    except ValueError:
        return None
    return workers if workers > 0 else None


max_workers = _workers_from_env() or max_workers


def get_output_dir(run_name):
    """
    Get the output directory for a named run.

    Args:
        run_name: Name of the run (usually the CLI subcommand)

    Returns:
        String path to the output directory
    """
    path = os.path.join(output_dir, run_name)
    os.makedirs(path, exist_ok=True)
    return path


def update_config(settings_dict):
    """
    Update configuration variables based on a dictionary of settings.

    Args:
        settings_dict: Dictionary containing configuration variables to update
    """
    global default_seed, property_samples, mu_samples, normalize_samples
    global max_workers, log_level, log_file, output_dir, fock_default_degree_factor

    if "default_seed" in settings_dict:
        default_seed = int(settings_dict["default_seed"])

    if "property_samples" in settings_dict:
        property_samples = int(settings_dict["property_samples"])

    if "mu_samples" in settings_dict:
        mu_samples = int(settings_dict["mu_samples"])

    if "normalize_samples" in settings_dict:
        normalize_samples = int(settings_dict["normalize_samples"])

    if "max_workers" in settings_dict:
        max_workers = max(1, int(settings_dict["max_workers"]))

    if "log_level" in settings_dict:
        log_level = settings_dict["log_level"]

    if "log_file" in settings_dict:
        log_file = settings_dict["log_file"]

    if "output_dir" in settings_dict:
        output_dir = settings_dict["output_dir"]

    if "fock_default_degree_factor" in settings_dict:
        fock_default_degree_factor = int(settings_dict["fock_default_degree_factor"])


def get_config():
    """
    Get the current configuration as a dictionary.

    Returns:
        Dictionary of all configuration settings
    """
    return {
        "default_seed": default_seed,
        "property_samples": property_samples,
        "mu_samples": mu_samples,
        "normalize_samples": normalize_samples,
        "max_workers": max_workers,
        "log_level": log_level,
        "log_file": log_file,
        "output_dir": output_dir,
        "fock_default_degree_factor": fock_default_degree_factor,
    }


def save_config_to_file(filepath="config/leibniz_lab.json"):
    """
    Save the current configuration to a JSON file.

    Args:
        filepath: Path to save the configuration file
    """
    directory = os.path.dirname(filepath)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(get_config(), f, indent=2)


def load_config_from_file(filepath="config/leibniz_lab.json"):
    """
    Load configuration from a JSON file.

    Args:
        filepath: Path to the configuration file

    Returns:
        Boolean indicating whether the file was found and applied

    Raises:
        SchemaError: if the file is not a JSON object of valid settings
    """
    if not os.path.exists(filepath):
        return False
    with open(filepath, "r", encoding="utf-8") as f:
        try:
            settings = json.load(f)
        except json.JSONDecodeError as e:
            raise SchemaError(f"Cannot parse configuration file {filepath}: {e}")
    if not isinstance(settings, dict):
        raise SchemaError(f"Configuration file {filepath} must hold a JSON object")
    try:
        update_config(settings)
    except (TypeError, ValueError) as e:
        raise SchemaError(f"Invalid setting in {filepath}: {e}")
    return True
