import random

import pytest

from fasy.assembly import find_ear_anchor
from fasy.catalog import open_catalog
from fasy.fixtures import (
    DEMO_QUERY_A,
    DEMO_QUERY_B,
    DEMO_SEED_ATTRIBUTES,
    disc_on_card,
    draw_component,
    generate_catalog,
    random_attributes,
    seam_fixture_family,
    synthetic_cutting,
)
from fasy.imaging import component_mask, face_mask
from fasy.schema import ComponentKind, matches, validate_record_attributes


class TestSyntheticCutting:
    def test_canonical_size(self):
        img = synthetic_cutting()
        assert (img.rows, img.cols) == (112, 92)

    @pytest.mark.parametrize("oval", [True, False])
    @pytest.mark.parametrize("ear_row", [36, 42, 50])
    def test_anchor_lands_on_left_ear(self, oval, ear_row):
        img = synthetic_cutting(ear_row=ear_row, oval=oval)
        anchor = find_ear_anchor(face_mask(img))
        assert anchor.col == 12
        assert ear_row <= anchor.row < ear_row + 15

    def test_mask_foreground_is_bright(self):
        img = synthetic_cutting(face_value=210, bg_value=20)
        mask = face_mask(img)
        # centre of the face oval must be foreground, corner background
        assert mask.bit(56, 46)
        assert not mask.bit(0, 0)


class TestComponentDrawings:
    @pytest.mark.parametrize("kind", [k for k in ComponentKind
                                      if k != ComponentKind.FACE_CUTTING])
    def test_drawn_component_has_dark_foreground(self, kind):
        rng = random.Random(11)
        attrs = random_attributes(kind, rng)
        validate_record_attributes(kind, attrs)
        img = draw_component(kind, attrs, rng)
        mask = component_mask(img)
        fg = mask.foreground_count()
        assert 0 < fg < img.rows * img.cols

    def test_seed_attributes_are_complete(self):
        for kind, attrs in DEMO_SEED_ATTRIBUTES.items():
            validate_record_attributes(kind, attrs)

    def test_demo_queries_target_the_seeds(self):
        for kind, attrs in DEMO_SEED_ATTRIBUTES.items():
            assert matches(kind, DEMO_QUERY_A.get(kind, {}), attrs)
        # the stricter query must reject at least one seed
        rejected = [kind for kind, attrs in DEMO_SEED_ATTRIBUTES.items()
                    if not matches(kind, DEMO_QUERY_B.get(kind, {}), attrs)]
        assert rejected


class TestDiscOnCard:
    def test_disc_centered_and_filled(self):
        img = disc_on_card(15, 15, card_value=235, disc_value=40, radius=5)
        assert img.at(7, 7) == 40
        assert img.at(0, 0) == 235
        mask = component_mask(img)
        assert mask.bit(7, 7)
        assert not mask.bit(0, 0)

    def test_family_is_graded(self):
        family = seam_fixture_family()
        assert len(family) == 20
        seen = set()
        for face, disc, pos in family:
            assert (face.rows, face.cols) == (40, 40)
            assert (disc.rows, disc.cols) == (15, 15)
            assert pos == (10, 12)
            seen.add((face.at(0, 0), disc.at(7, 7)))
        assert len(seen) == 20  # each fixture has a distinct contrast step


class TestGenerateCatalog:
    def test_same_seed_bit_identical(self, tmp_path):
        a = generate_catalog(tmp_path / "a", seed=5)
        b = generate_catalog(tmp_path / "b", seed=5)
        assert len(a) == len(b)
        for rid in range(len(a)):
            assert a.image_bytes(rid) == b.image_bytes(rid)
            assert a.component(rid).attributes == b.component(rid).attributes

    def test_reopens_cleanly(self, tmp_path):
        generated = generate_catalog(tmp_path / "cat", seed=9, per_kind=2)
        reopened = open_catalog(tmp_path / "cat")
        assert len(reopened) == len(generated) == 14
        for kind in ComponentKind:
            assert len(reopened.match_components(kind, {})) == 2

    def test_first_record_per_kind_is_the_seed(self, demo_catalog):
        for kind in ComponentKind:
            records = demo_catalog.match_components(kind, {})
            lowest = min(records, key=lambda r: r.id)
            assert lowest.attributes == DEMO_SEED_ATTRIBUTES[kind]

    def test_demo_query_a_matches_every_kind(self, demo_catalog):
        for kind in ComponentKind:
            hits = demo_catalog.match_components(kind, DEMO_QUERY_A.get(kind, {}))
            assert hits, f"demo query found nothing for {kind.value}"

    def test_cutting_records_have_findable_ears(self, demo_catalog):
        for record in demo_catalog.match_components(ComponentKind.FACE_CUTTING, {}):
            img = demo_catalog.image(record.id)
            anchor = find_ear_anchor(face_mask(img))
            assert 0 <= anchor.row < img.rows
            assert 0 <= anchor.col < img.cols
