"""Provides services for configuration."""
from typing import Any, Dict, Optional

from featurefinch.config.config import Config
from featurefinch.config.settings import RunConfig
from featurefinch.filesystem.filesystem import FileSystem
from featurefinch.foundation.application import Application
from featurefinch.support.services import Service, ServiceProvider


class ConfigServiceProvider(ServiceProvider):
    """Registers configuration services to the service container.

    Attributes:
        config_path: Optional path to a flat `key = value` config file.
        flags: Flat options given on the command line.
    """

    provides = ("config",)

    def __init__(
        self, config_path: Optional[str] = None, flags: Dict[str, Any] = None
    ) -> None:
        """Establish the sources of configuration.

        Args:
            config_path: Optional path to the config file.
            flags: Flat options given on the command line.
        """
        self.config_path = config_path
        self.flags = flags or {}

    def register(self, app: Application) -> None:
        """Register the RunConfig to the service container.

        This service holds the validated settings of the run.

        Args:
            app: The Application.
        """

        def register_config(app: Application) -> RunConfig:
            """Closure for creating the run settings.

            Args:
                app: The Application.

            Returns:
                RunConfig: Settings merged from defaults,
                    the config file and the flags.
            """
            config = Config()

            if self.config_path:
                config.read_flat(FileSystem.read_file(self.config_path))

            return RunConfig.from_options(config.run_options(), self.flags)

        app.bind(Service("config", register_config, singleton=True))
