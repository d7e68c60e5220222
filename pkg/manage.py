import sys


def cmd_keli(argv):
    from keli.cli import dispatch
    # ['manage.py', 'zeros', '--k', '1'] -> dispatch(['zeros', '--k', '1'])
    return dispatch(argv)


def print_help():
    from keli.cli import STAGES
    commands = '\n'.join(f'        {stage.COMMAND:<10} {stage.HELP}' for stage in STAGES)
    help_text = f"""
    Usage: python manage.py <command> [options]

    Available commands:
{commands}
        help       Show this help message.

    Run `python manage.py <command> --help` for the options of one command.
    """
    print(help_text)


if __name__ == "__main__":
    """Main entry point for manage.py script."""
    if len(sys.argv) < 2:
        print_help()
        sys.exit(1)

    command = sys.argv[1].lower()
    if command == "help":
        print_help()
        sys.exit(0)

    sys.exit(cmd_keli([command] + sys.argv[2:]))
