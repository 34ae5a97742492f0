from ._polyext import (
    CapError,
    InputError,
    certify,
    counts,
    enumerate_collection,
    ext,
    quiver_dot,
    quiver_json,
    schemas,
    verify,
)

__all__ = [
    "CapError",
    "InputError",
    "certify",
    "counts",
    "enumerate_collection",
    "ext",
    "quiver_dot",
    "quiver_json",
    "schemas",
    "verify",
]
