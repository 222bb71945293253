from .render import (
    METRICS,
    PanelSpec,
    SchemaError,
    available_panels,
    build_figure,
    read_aggregate,
    render,
)

__all__ = [
    "METRICS",
    "PanelSpec",
    "SchemaError",
    "available_panels",
    "build_figure",
    "read_aggregate",
    "render",
]
