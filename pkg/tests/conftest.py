"""Shared fixtures: catalog builds are cached so d-matrix caches are reused."""

from functools import lru_cache

from minmod import catalog
from minmod.cohomology import verify_volume_form
from minmod.sullivan import EllipticityCertificate, ellipticity_certificate


@lru_cache(maxsize=None)
def built(key, **params):
    """(AlgebraFile, certificate) for a catalog entry, built once per session."""
    af = catalog.build(key, **params)
    cert = ellipticity_certificate(af.algebra)
    assert isinstance(cert, EllipticityCertificate), key
    return af, cert


@lru_cache(maxsize=None)
def certified(key, **params):
    """(AlgebraFile, certificate, VolumeForm) for entries declaring a volume."""
    af, cert = built(key, **params)
    vol = verify_volume_form(af.algebra, af.volume, cert)
    return af, cert, vol


ALL_KEYS = (
    ("lemma", {"i": 0}),
    ("lemma", {"i": 1}),
    ("chain-base", {}),
    ("chain-reduced", {}),
    ("chiral1", {"l1": 4, "l2": 2}),
    ("chiral2", {"l": 4}),
    ("chiral3", {"l": 5}),
    ("lower-grading", {}),
    ("cp", {"n": 4}),
    ("sphere", {"k": 6}),
)
