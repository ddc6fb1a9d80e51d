"""Instance generation, symbol obfuscation, and description rendering."""

from .dataset import (
    LEVELS_BY_DOMAIN,
    NaturalnessLevel,
    TaskInstance,
    generate_dataset,
    read_instance,
    write_instance,
)
from .instances import (
    COLORS,
    blocksworld_config,
    gen_barman_instance,
    gen_blocksworld_instance,
)
from .lexicon import ActionFrame, Lexicalization, for_domain
from .obfuscate import (
    RenameMap,
    fresh_nonsense_map,
    map_plan,
    obfuscate,
    canonical_mystery_map,
)
from .render import (
    render_heavy,
    render_heavy_pd,
    render_moderate,
    render_moderate_pd,
    render_natural,
)

__all__ = [
    "ActionFrame",
    "COLORS",
    "LEVELS_BY_DOMAIN",
    "Lexicalization",
    "NaturalnessLevel",
    "RenameMap",
    "TaskInstance",
    "blocksworld_config",
    "for_domain",
    "fresh_nonsense_map",
    "gen_barman_instance",
    "gen_blocksworld_instance",
    "generate_dataset",
    "map_plan",
    "obfuscate",
    "canonical_mystery_map",
    "read_instance",
    "render_heavy",
    "render_heavy_pd",
    "render_moderate",
    "render_moderate_pd",
    "render_natural",
    "write_instance",
]
