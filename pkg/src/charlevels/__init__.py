"""Exact character tables, conductors and p-rationality levels of finite groups."""

__version__ = "0.1.0"

from .cyclo import Cyclotomic, E, conductor, galois, level, root_of_unity, sigma_alpha
from .permgrp import PermGroup, conjugacy_classes, group_from_generators, sylow, normalizer
from .chartab import Character, CharacterTable, character_table
from .rationality import char_conductor, char_level, level_histogram

__all__ = [
    "Cyclotomic", "E", "conductor", "galois", "level", "root_of_unity", "sigma_alpha",
    "PermGroup", "conjugacy_classes", "group_from_generators", "sylow", "normalizer",
    "Character", "CharacterTable", "character_table",
    "char_conductor", "char_level", "level_histogram",
]
