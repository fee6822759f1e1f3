import itertools
import logging
import shutil
import sys
import threading
import time

from colorama import Fore, Style

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = "WARNING") -> None:
    """Configure the root logger once for the command line tools."""
    numeric = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric, int):
        raise ValueError(f"unknown log level '{level}'")
    logging.basicConfig(level=numeric, format=LOG_FORMAT, stream=sys.stderr)


class LoadingAnimation:
    """Spinner on stderr while a long step runs."""
    def __init__(self, message):
        self._running = False
        self._thread = None
        self._frames = ["⠋", "⠙", "⠹", "⠸", "⠼", "⠴", "⠦", "⠧", "⠇", "⠏"]
        self._message = message

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *exc):
        self.stop()
        return False

    def start(self):
        if not sys.stderr.isatty():
            return
        self._running = True
        self._thread = threading.Thread(target=self._animate, daemon=True)
        self._thread.start()

    def stop(self):
        self._running = False
        if self._thread:
            self._thread.join()
            self._thread = None
            sys.stderr.write("\r" + " " * (len(self._message) + 4) + "\r")
            sys.stderr.flush()

    def _animate(self):
        for frame in itertools.cycle(self._frames):
            if not self._running:
                break
            sys.stderr.write(f"\r{self._message} {frame}")
            sys.stderr.flush()
            time.sleep(0.1)


def get_terminal_width(limit: int = 100) -> int:
    width, _ = shutil.get_terminal_size()
    return min(width, limit)


def render_box(text: str, header: str = '', color: str = Fore.CYAN, padding: int = 1) -> str:
    """
    Frame text in a rounded box that fits the terminal.

    Args:
        text (str): Body, may span several lines
        header (str): Optional title set into the top border
        color (str): colorama colour of the border
        padding (int): Spaces between border and text

    Returns:
        str: The box, ready to print
    """
    width = get_terminal_width()
    inner = width - 2 * padding - 2

    lines = []
    for line in text.split('\n'):
        while len(line) > inner:
            cut = line[:inner].rfind(' ')
            cut = inner if cut <= 0 else cut
            lines.append(line[:cut])
            line = line[cut:].strip()
        lines.append(line)

    title = f" {header} " if header else ""
    left = (width - 2 - len(title)) // 2
    right = width - 2 - len(title) - left
    result = [f"{color}╭{'─' * left}{Style.BRIGHT}{title}{Style.NORMAL}{'─' * right}╮{Style.RESET_ALL}"]
    for line in lines:
        result.append(f"{color}│{Style.RESET_ALL}{' ' * padding}{line.ljust(inner)}{' ' * padding}{color}│{Style.RESET_ALL}")
    result.append(f"{color}╰{'─' * (width - 2)}╯{Style.RESET_ALL}")
    return "\n".join(result)
