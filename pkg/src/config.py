from pydantic_settings import BaseSettings


class AppConfig(BaseSettings):
    FOCK_ENERGY: str = "4"
    MODE_BOUND: int = 2
    STATE_CAP: int = 2000
    SEED: int = 0
    JOBS: int = 0
    OUTPUT_FORMAT: str = "json"
    REPORT_DB: str = ""
    RECORD_TIMINGS: bool = True
    LOG_LEVEL: str = "INFO"
    RANDOM_SAMPLES: int = 1000
