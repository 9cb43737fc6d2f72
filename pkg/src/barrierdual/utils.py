import sys


class bcolors:
    HEADER = "\033[95m"
    OKBLUE = "\033[94m"
    OKCYAN = "\033[96m"
    OKGREEN = "\033[92m"
    WARNING = "\033[93m"
    FAIL = "\033[91m"
    ENDC = "\033[0m"
    BOLD = "\033[1m"
    UNDERLINE = "\033[4m"


# diagnostics go to stderr: stdout carries CSV/JSON only
def print_info(msg):
    print(msg, file=sys.stderr)


def print_success(msg):
    print(f"{bcolors.OKGREEN}{msg}{bcolors.ENDC}", file=sys.stderr)


def print_warning(msg):
    print(f"{bcolors.WARNING}{msg}{bcolors.ENDC}", file=sys.stderr)


def print_error(msg):
    print(f"{bcolors.FAIL}{msg}{bcolors.ENDC}", file=sys.stderr)
