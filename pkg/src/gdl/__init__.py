"""Gauss diagram lab: diagrams, oriented Reidemeister moves, arrow-pattern brackets."""

from gdl.diagram import (
    Arrow,
    EndpointRef,
    GaussCodeError,
    GaussDiagram,
    canonical_form,
    parse_gauss_code,
    random_diagram,
    serialize,
)

__all__ = [
    "Arrow",
    "EndpointRef",
    "GaussCodeError",
    "GaussDiagram",
    "canonical_form",
    "parse_gauss_code",
    "random_diagram",
    "serialize",
]
