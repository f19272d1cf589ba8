"""Classes for accessing config settings."""
from ast import literal_eval
from configparser import ConfigParser
from typing import Dict


class Config(ConfigParser):
    """Wrapper class for ConfigParser.

    Provides helper functions for accessing options in
    the configuration files.
    """

    RUN_SECTION = "run"

    def get_section(self, section: str) -> Dict:
        """Retrieve a section from ConfigParser and casts the options.

        Args:
            section: Section to retrieve.

        Returns:
            dict: Cast options for the section.
        """
        section = self.__getitem__(section)
        options = {}

        for option, value in section.items():
            try:
                value = literal_eval(value)
            except (ValueError, SyntaxError):
                pass
            options[option] = value

        return options

    def read_flat(self, text: str) -> None:
        """Read a flat `key = value` config text into the run section.

        The command-line config file has no section header. Keys match
        the long flag names; dashes become underscores.

        Args:
            text: Contents of the config file.
        """
        self.read_string(f"[{self.RUN_SECTION}]\n{text}")

    def optionxform(self, optionstr: str) -> str:
        """Normalise option names to the settings field names.

        Args:
            optionstr: Raw option name.

        Returns:
            str: Lower case name with dashes replaced by underscores.
        """
        return optionstr.strip().lower().replace("-", "_")

    def run_options(self) -> Dict:
        """Retrieve the cast run section, or nothing if it is absent.

        Returns:
            dict: Cast options of the run section.
        """
        if not self.has_section(self.RUN_SECTION):
            return {}

        return self.get_section(self.RUN_SECTION)
