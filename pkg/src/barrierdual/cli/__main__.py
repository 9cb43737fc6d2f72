import sys
import barrierdual.cli.setup_cli


def main():
    # run the CLI
    sys.exit(barrierdual.cli.setup_cli.start_cli_parser(args=sys.argv[1:]))


if __name__ == "__main__":
    main()
