import numpy as np

from qslip import ModelParams

# Parameter sets highlighted throughout the analysis (omega = 1 rescaling).
FIGURE_PARAMS = (
    ModelParams(0.1, 0.9),
    ModelParams(0.3, 0.8),
    ModelParams(0.1, 0.8),
    ModelParams(0.01, 0.4),
)


def random_model_params(rng: np.random.Generator) -> ModelParams:
    """Draw rates with omega in [0.5, 2], b strictly inside (0, omega)."""
    omega = rng.uniform(0.5, 2.0)
    b = rng.uniform(0.05, 0.95) * omega
    a = rng.uniform(0.0, 1.0)
    return ModelParams(a, b, omega)


def random_bloch_in_ball(rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from the closed unit ball."""
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v * rng.uniform(0.0, 1.0) ** (1.0 / 3.0)
