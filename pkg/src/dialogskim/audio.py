"""Time-range slicing of stored audio files.

Audio stays an opaque file; no decoding happens here. WAV slices are exact
(frame arithmetic from the container header, returned as a standalone WAV).
Other formats fall back to a proportional byte range under a constant
bitrate assumption, which players handle for the common podcast formats.
"""

from __future__ import annotations

import io
import wave
from pathlib import Path

from .errors import NotFoundError, RangeOutOfBoundsError

CONTENT_TYPES = {
    ".wav": "audio/wav",
    ".mp3": "audio/mpeg",
    ".m4a": "audio/mp4",
    ".aac": "audio/aac",
    ".ogg": "audio/ogg",
    ".opus": "audio/ogg",
    ".flac": "audio/flac",
}


def content_type_for(path: Path) -> str:
    return CONTENT_TYPES.get(path.suffix.lower(), "application/octet-stream")


def wav_duration_s(path: Path) -> float:
    with wave.open(str(path), "rb") as handle:
        rate = handle.getframerate()
        return handle.getnframes() / float(rate)


def audio_duration_s(path: Path, fallback: float | None = None) -> float:
    """Duration from the container when it is WAV, otherwise the fallback."""
    if path.suffix.lower() == ".wav":
        return wav_duration_s(path)
    if fallback is None:
        raise NotFoundError(f"no duration known for {path.name}")
    return fallback


def slice_audio(
    path: Path, start_s: float, end_s: float, duration_hint: float | None = None
) -> tuple[bytes, str]:
    """Bytes covering [start_s, end_s] plus a content type.

    Raises RANGE_OUT_OF_BOUNDS unless 0 <= start_s < end_s <= duration.
    """
    if not path.is_file():
        raise NotFoundError(f"audio file {path} missing")
    duration = audio_duration_s(path, fallback=duration_hint)
    if not (0 <= start_s < end_s <= duration + 1e-9):
        raise RangeOutOfBoundsError(
            f"requested [{start_s}, {end_s}] outside [0, {duration:.3f}]"
        )

    if path.suffix.lower() == ".wav":
        with wave.open(str(path), "rb") as src:
            rate = src.getframerate()
            first = int(start_s * rate)
            count = max(1, int((end_s - start_s) * rate))
            count = min(count, src.getnframes() - first)
            src.setpos(first)
            frames = src.readframes(count)
            buffer = io.BytesIO()
            with wave.open(buffer, "wb") as dst:
                dst.setnchannels(src.getnchannels())
                dst.setsampwidth(src.getsampwidth())
                dst.setframerate(rate)
                dst.writeframes(frames)
        return buffer.getvalue(), "audio/wav"

    raw = path.read_bytes()
    lo = int(len(raw) * (start_s / duration))
    hi = int(len(raw) * (end_s / duration))
    return raw[lo : max(hi, lo + 1)], content_type_for(path)
