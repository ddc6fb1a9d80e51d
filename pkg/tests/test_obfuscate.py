import random
import re

import pytest

from pddlbench.datagen import (
    fresh_nonsense_map,
    gen_blocksworld_instance,
    map_plan,
    obfuscate,
    canonical_mystery_map,
)
from pddlbench.datagen.obfuscate import CANONICAL_SYMBOL_MAP, RenameMap, symbols_of
from pddlbench.errors import IncompleteMap
from pddlbench.model import OBJECT_TYPE, make_plan


class TestRenameMap:
    def test_round_trip_dict(self):
        rmap = RenameMap.from_dict({"a": "b", "c": "d"})
        assert rmap.as_dict() == {"a": "b", "c": "d"}

    def test_inverse_is_involution(self):
        rmap = RenameMap.from_dict({"a": "x", "b": "y"})
        assert rmap.inverse().inverse() == rmap
        assert rmap.inverse().get("x") == "a"

    def test_duplicate_source_rejected(self):
        with pytest.raises(ValueError):
            RenameMap(pairs=(("a", "x"), ("a", "y")))

    def test_merged_target_rejected(self):
        with pytest.raises(ValueError):
            RenameMap(pairs=(("a", "x"), ("b", "x")))

    def test_bad_symbol_rejected(self):
        with pytest.raises(ValueError):
            RenameMap(pairs=(("a", "Not Valid"),))

    def test_contains_and_get(self):
        rmap = RenameMap.from_dict({"on": "craves"})
        assert "on" in rmap
        assert rmap.get("on") == "craves"
        assert rmap.get("off") is None


class TestObfuscate:
    def test_canonical_map_reproduces_shipped_veiled_domain(self, bw_domain, bw_problem):
        veiled_domain, _ = obfuscate(bw_domain, bw_problem, canonical_mystery_map())
        from pddlbench.assets import gold_domain

        assert veiled_domain == gold_domain("mystery_blocksworld")

    def test_canonical_map_renames_problem(self, bw_domain, bw_problem):
        _, veiled = obfuscate(bw_domain, bw_problem, canonical_mystery_map())
        assert veiled.domain_name == "mystery_blocksworld"
        assert [n for n, _ in veiled.objects] == ["a", "b", "c", "d"]
        init = {str(lit) for lit in veiled.init}
        assert "(craves b a)" in init
        assert "(harmony)" in init
        assert all(t == OBJECT_TYPE for _, t in veiled.objects)

    def test_variables_survive_renaming(self, bw_domain, bw_problem):
        veiled_domain, _ = obfuscate(bw_domain, bw_problem, canonical_mystery_map())
        originals = {p.name for a in bw_domain.actions for p in a.params}
        survived = {p.name for a in veiled_domain.actions for p in a.params}
        assert survived == originals

    def test_incomplete_map_lists_missing_sorted(self, bw_domain, bw_problem):
        partial = dict(CANONICAL_SYMBOL_MAP)
        del partial["on"], partial["holding"]
        rmap = RenameMap.from_dict(
            {**partial, "red": "a", "blue": "b", "green": "c", "yellow": "d"}
        )
        with pytest.raises(IncompleteMap) as err:
            obfuscate(bw_domain, bw_problem, rmap)
        assert err.value.missing == sorted(err.value.missing)
        assert set(err.value.missing) == {"on", "holding"}

    def test_map_plan(self):
        plan = make_plan([("pickup", ("red",)), ("stack", ("red", "blue"))])
        mapped = map_plan(plan, canonical_mystery_map())
        assert [str(s) for s in mapped.steps] == ["(attack a)", "(overcome a b)"]

    def test_inverse_obfuscation_restores_original(self, bw_domain):
        problem, _ = gen_blocksworld_instance(7, 5)
        rng = random.Random(3)
        rmap = fresh_nonsense_map(bw_domain, problem, rng)
        veiled_domain, veiled_problem = obfuscate(bw_domain, problem, rmap)
        back_domain, back_problem = obfuscate(veiled_domain, veiled_problem, rmap.inverse())
        assert back_domain == bw_domain
        assert back_problem == problem


class TestFreshNonsenseMap:
    def test_covers_every_symbol_bijectively(self, bw_domain):
        problem, _ = gen_blocksworld_instance(1, 6)
        rmap = fresh_nonsense_map(bw_domain, problem, random.Random(0))
        sources = symbols_of(bw_domain, problem)
        mapping = rmap.as_dict()
        assert set(mapping) == sources
        assert len(set(mapping.values())) == len(mapping)

    def test_names_are_pronounceable_nonsense(self, bw_domain):
        problem, _ = gen_blocksworld_instance(1, 4)
        rmap = fresh_nonsense_map(bw_domain, problem, random.Random(5))
        shape = re.compile(r"^([bdfgklmnprstvz][aeiou]){2,3}$")
        for target in rmap.as_dict().values():
            assert shape.match(target), target

    def test_avoids_existing_and_reserved_words(self, bw_domain):
        problem, _ = gen_blocksworld_instance(2, 4)
        rmap = fresh_nonsense_map(bw_domain, problem, random.Random(1))
        sources = symbols_of(bw_domain, problem)
        for target in rmap.as_dict().values():
            assert target not in sources
            assert target not in {OBJECT_TYPE, "and", "not", "define", "domain", "problem"}

    def test_deterministic_per_seed(self, bw_domain):
        problem, _ = gen_blocksworld_instance(2, 4)
        a = fresh_nonsense_map(bw_domain, problem, random.Random(9))
        b = fresh_nonsense_map(bw_domain, problem, random.Random(9))
        c = fresh_nonsense_map(bw_domain, problem, random.Random(10))
        assert a == b
        assert a != c
