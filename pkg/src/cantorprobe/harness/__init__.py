from .config import ExperimentConfig, FunctionSpec, load_config, parse_config
from .emit import emit
from .experiments import run_construct, run_energy_profile, run_fubini, run_graph, run_prevalence
