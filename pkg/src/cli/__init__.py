from cli.commands import DEFAULT_COMMAND, get_all_command_info, get_command
from cli.main import run

__all__ = ["DEFAULT_COMMAND", "get_all_command_info", "get_command", "run"]
