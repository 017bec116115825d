# burkhardt_core/settings.py

from dataclasses import dataclass

# Numeric defaults shared by the command line and the certificate runner.
DEFAULTS = {
    "search_bound": 5000,
    "threads": 1,
    "sample_obstruction": 10,
    "mazur_bound": 12,
    "generate": 100,
    "max_height_bits": 64,
    "sample_height_bits": 16,
}


@dataclass(frozen=True)
class RunSettings:
    """
    Settings for one invocation. Built from command-line flags only, so a
    run is reproducible from its command line.
    """

    search_bound: int = DEFAULTS["search_bound"]
    threads: int = DEFAULTS["threads"]
    as_json: bool = False
    sample_obstruction: int = DEFAULTS["sample_obstruction"]
    mazur_bound: int = DEFAULTS["mazur_bound"]
    show_log: bool = False

    @classmethod
    def from_args(cls, args) -> "RunSettings":
        return cls(
            search_bound=getattr(args, "search_bound", DEFAULTS["search_bound"]),
            threads=max(1, getattr(args, "threads", DEFAULTS["threads"])),
            as_json=getattr(args, "json", False),
            sample_obstruction=getattr(
                args, "sample_obstruction", DEFAULTS["sample_obstruction"]
            ),
            mazur_bound=getattr(args, "mazur_bound", DEFAULTS["mazur_bound"]),
            show_log=getattr(args, "show_log", False),
        )
