import os
from pathlib import Path
from typing import List


class OutputValidationError(OSError):
    """Raised when an output destination cannot be written."""
    pass


class OutputValidator:
    """Checks that a data file can be created before any computation starts."""

    ALLOWED_SUFFIXES = {".csv", ".json", ".jsonl"}

    def __init__(self, target_file: Path):
        self.target_file = target_file
        self.validation_errors: List[str] = []

    def validate_target_file(self) -> bool:
        """
        Validates the destination file and its parent directory.

        Returns:
            bool: True if the file can be written, False otherwise

        Side effects:
            Populates self.validation_errors with any issues found
        """
        self.validation_errors.clear()

        try:
            if self.target_file.exists() and self.target_file.is_dir():
                self.validation_errors.append(f"Path exists but is a directory: {self.target_file}")
                return False
            if self.target_file.suffix and self.target_file.suffix not in self.ALLOWED_SUFFIXES:
                self.validation_errors.append(
                    f"Unsupported extension '{self.target_file.suffix}', "
                    f"use one of {sorted(self.ALLOWED_SUFFIXES)}"
                )
            return self._validate_parent_directory() and not self.validation_errors
        except (OSError, PermissionError) as e:
            self.validation_errors.append(f"System error accessing destination: {e}")
            return False

    def _validate_parent_directory(self) -> bool:
        """Validate the directory the temporary file and the result are written to."""
        parent_dir = self.target_file.parent
        is_valid = True

        if not parent_dir.exists():
            self.validation_errors.append(f"Parent directory does not exist: {parent_dir}")
            return False

        if not parent_dir.is_dir():
            self.validation_errors.append(f"Parent path exists but is not a directory: {parent_dir}")
            return False

        if not os.access(parent_dir, os.W_OK):
            self.validation_errors.append(f"No write permission in parent directory: {parent_dir}")
            is_valid = False

        if not os.access(parent_dir, os.X_OK):
            self.validation_errors.append(f"No execute permission in parent directory: {parent_dir}")
            is_valid = False

        if self.target_file.exists() and not os.access(self.target_file, os.W_OK):
            self.validation_errors.append(f"Existing file is not writable: {self.target_file}")
            is_valid = False

        return is_valid

    def get_validation_summary(self) -> str:
        """Get a formatted summary of validation results."""
        if not self.validation_errors:
            return "✅ Output validation passed"

        summary = "❌ Output validation failed:\n"
        for i, error in enumerate(self.validation_errors, 1):
            summary += f"   {i}. {error}\n"

        return summary.rstrip()

    def raise_if_invalid(self) -> None:
        """Raise OutputValidationError if validation failed."""
        if not self.validate_target_file():
            raise OutputValidationError(self.get_validation_summary())
