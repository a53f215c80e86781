from pydantic_settings import BaseSettings, PydanticBaseSettingsSource


class Settings(BaseSettings):
    # Reproducibility
    SEED: int = 20240601

    # Budgets
    MAX_ELEMENTS: int = 2**18
    MAX_VERTICES: int = 50_000
    MAX_COSETS: int = 2**16
    MAX_DEGREE: int = 2**16
    CATALOG_ORDER_LIMIT: int = 2**14
    # Regular carriers are refused above this order; use the small representation instead
    MAX_REGULAR_CARRIER: int = 2**12
    AUTOMORPHISM_NODE_BUDGET: int = 200_000

    # Above this order, simplicity/primitivity/normal subgroups are not enumerated
    DESK_ORDER_LIMIT: int = 10**6
    # Below this size, cross-check paths run as well
    ENUMERATION_LIMIT: int = 10**4

    # Randomized Schreier-Sims stops after this many sifts to the identity in a row
    SCHREIER_SIMS_STABLE_ROUNDS: int = 20

    # Workers
    JOBS: int = 1

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False

    class Config:
        env_prefix = "HAT_"
        env_file = ".env"
        extra = "ignore"

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # HAT_* variables win over values passed on the command line
        return env_settings, init_settings, dotenv_settings, file_secret_settings


settings = Settings()


def configure(**overrides: object) -> Settings:
    """Apply command-line overrides to the shared settings object in place.

    Keys are the lower-case flag names; ``None`` values are dropped so unset
    flags keep their defaults.
    """
    values = {key.upper(): value for key, value in overrides.items() if value is not None}
    fresh = Settings(**values)
    for name in Settings.model_fields:
        setattr(settings, name, getattr(fresh, name))
    return settings
