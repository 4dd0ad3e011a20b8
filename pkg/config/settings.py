"""
Configuration settings for the Schrödinger determinant toolkit
"""
from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    # API Configuration
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    debug: bool = False
    log_level: str = "INFO"

    # Potential Configuration
    floor_margin: float = 1e-3
    default_domain_lo: float = -0.25
    default_domain_hi: float = 1.25
    floor_samples_per_piece: int = 4096

    # Quadrature Configuration
    quad_tol: float = 1e-12
    quad_max_depth: int = 40
    trapezoid_nodes: int = 1024

    # Spectrum Configuration
    eigen_cap: int = 4096
    eigen_tol: float = 1e-12

    # Asymptotics Configuration
    rational_max_denominator: int = 1_000_000
    rational_tol: float = 1e-9

    # Sweep Configuration
    sweep_workers: int = 1
    csv_significant_digits: int = 17

    class Config:
        env_file = ".env"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
