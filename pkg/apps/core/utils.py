"""
Utility helpers shared across apps.
"""

import hashlib
from pathlib import Path

from .exceptions import InputError


def edit_distance(a, b):
    """Levenshtein distance between two strings."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, char_a in enumerate(a, start=1):
        current = [i]
        for j, char_b in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (char_a != char_b),
            ))
        previous = current
    return previous[-1]


def closest_match(name, candidates):
    """Candidate nearest to `name` by case-insensitive edit distance, or None."""
    best = None
    best_distance = None
    for candidate in candidates:
        distance = edit_distance(name.lower(), candidate.lower())
        if best_distance is None or distance < best_distance:
            best, best_distance = candidate, distance
    return best


def sha256_file(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for block in iter(lambda: handle.read(65536), b''):
            digest.update(block)
    return digest.hexdigest()


def read_text(path):
    """
    UTF-8 file contents; a leading byte-order mark is dropped.

    Undecodable or unreadable files raise InputError naming the path.
    """
    try:
        return Path(path).read_text(encoding='utf-8').lstrip('\ufeff')
    except FileNotFoundError:
        raise
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8 (byte {exc.start})") from exc
    except OSError as exc:
        raise InputError(f"{path}: cannot be read ({exc.strerror or exc})") from exc
