"""Reader for flat ``key = value`` experiment configs."""

import logging
import math
import re
from pathlib import Path
from typing import Any, Dict, List, Union

from lkapprox.io.core import KNOWN_KEYS
from lkapprox.spaces.errors import ParseError

logger = logging.getLogger(__name__)

_KEY_PATTERN = re.compile(r"^[a-z][a-z0-9_]*$")
_INT_PATTERN = re.compile(r"^[-+]?\d+$")
_FLOAT_PATTERN = re.compile(r"^[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?$")


def _split_top_level(body: str) -> List[str]:
    parts, depth, current = [], 0, []
    for char in body:
        if char == "[":
            depth += 1
        elif char == "]":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return parts


def parse_value(text: str) -> Any:
    """Parse a value: ints, floats, ``inf``, ``[...]`` arrays (nestable) or bare strings.

    Raises:
        ParseError: On unbalanced brackets or empty array items
    """
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]") or text.count("[") != text.count("]"):
            raise ParseError(f"unbalanced brackets in {text!r}")
        body = text[1:-1].strip()
        if not body:
            return []
        items = _split_top_level(body)
        if any(not item.strip() for item in items):
            raise ParseError(f"empty item in array {text!r}")
        return [parse_value(item) for item in items]
    if _INT_PATTERN.match(text):
        return int(text)
    if _FLOAT_PATTERN.match(text):
        return float(text)
    if text.lower() in ("inf", "+inf", "infinity"):
        return math.inf
    if text.lower() in ("-inf", "-infinity"):
        return -math.inf
    if not text:
        raise ParseError("missing value")
    return text


class ConfigReader:
    """Reads a flat experiment config into a dictionary of values.

    The expected format is one ``key = value`` per line:
        # Lemma 2 closed-form case
        kind = lemma2
        alpha = 1
        gamma = [1, 1]
        eps = [1, 1]
        weights = [1, l1^0.5]
        window = 10:25
    """

    def __init__(self, source_file: Union[str, Path], encoding: str = "utf-8"):
        """Initialize the reader.

        Args:
            source_file: Path to the config file
            encoding: Text encoding (default: utf-8)
        """
        self.source_file = Path(source_file)
        self.encoding = encoding
        self.values: Dict[str, Any] = {}
        self._read_file()

    def _read_file(self) -> None:
        """Parse the config file and populate the values dictionary."""
        try:
            lines = self.source_file.read_text(encoding=self.encoding).splitlines()
        except OSError as e:
            raise ParseError(f"cannot read config {self.source_file}: {e}") from e
        self.values = self.parse_lines(lines, str(self.source_file))
        logger.info("Reader: loaded %d keys from %s", len(self.values), self.source_file)

    @staticmethod
    def parse_lines(lines: List[str], origin: str = "<config>") -> Dict[str, Any]:
        """Parse config lines; comments start with ``#``.

        Raises:
            ParseError: On a malformed line, an unknown or repeated key
        """
        values: Dict[str, Any] = {}
        for number, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{origin}:{number}: expected 'key = value', got {raw.strip()!r}")
            key, text = (part.strip() for part in line.split("=", 1))
            if not _KEY_PATTERN.match(key) or key not in KNOWN_KEYS:
                raise ParseError(f"{origin}:{number}: unknown key {key!r}")
            if key in values:
                raise ParseError(f"{origin}:{number}: key {key!r} given twice")
            try:
                values[key] = parse_value(text)
            except ParseError as e:
                raise ParseError(f"{origin}:{number}: {e}") from e
        return values

    def get_values(self) -> Dict[str, Any]:
        """Return the parsed values."""
        return self.values

    def __len__(self) -> int:
        return len(self.values)
