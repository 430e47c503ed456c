import pytest

from fasy.assembly import LayoutOverride, Slot
from fasy.blending import PlacementMode
from fasy.catalog import open_catalog
from fasy.errors import (
    IncompleteSelection,
    InvalidRequest,
    NotACandidate,
    OutOfCanvas,
    SchemaViolation,
    SessionFinalized,
    UnknownRecord,
    UnknownSession,
)
from fasy.fixtures import DEMO_QUERY_A
from fasy.schema import WILDCARD, ComponentKind
from fasy.session import SessionState, Workflow


@pytest.fixture
def workflow(demo_catalog):
    return Workflow(demo_catalog)


def select_all_lowest(workflow, sid, query=None):
    results = workflow.submit_query(sid, query or {})
    for kind, records in results.items():
        workflow.select_component(sid, kind, records[0].id)
    return results


class TestSessionLifecycle:
    def test_fresh_session(self, workflow):
        a = workflow.create_session()
        b = workflow.create_session()
        assert a.id != b.id
        assert a.state == SessionState.QUERYING
        assert a.selections == {}
        assert a.last_preview is None

    def test_unknown_session(self, workflow):
        with pytest.raises(UnknownSession):
            workflow.submit_query("nope", {})

    def test_full_walkthrough(self, workflow):
        s = workflow.create_session()
        results = workflow.submit_query(s.id, DEMO_QUERY_A)
        assert s.state == SessionState.SELECTING
        for kind in ComponentKind:
            assert results[kind], f"no candidates for {kind.value}"
            workflow.select_component(s.id, kind, results[kind][0].id)
        preview = workflow.generate_preview(s.id)
        assert s.state == SessionState.PREVIEWING
        assert preview.mode == PlacementMode.TUNED
        workflow.adjust_placement(s.id, LayoutOverride.of({Slot.LIP: (2, 0)}))
        face_id = workflow.finalize(s.id)
        assert s.state == SessionState.FINALIZED
        assert workflow.catalog.face(face_id).components == s.selections


class TestSubmitQuery:
    def test_all_wildcard_lists_everything(self, workflow):
        s = workflow.create_session()
        results = workflow.submit_query(s.id, {})
        for kind in ComponentKind:
            assert len(results[kind]) == 3

    def test_invalid_query_rejected_without_state_change(self, workflow):
        s = workflow.create_session()
        with pytest.raises(SchemaViolation):
            workflow.submit_query(s.id, {ComponentKind.NOSE: {"Width": "Huge"}})
        assert s.state == SessionState.QUERYING
        assert s.query is None

    def test_requery_returns_to_selecting_and_drops_preview(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        workflow.generate_preview(s.id)
        workflow.submit_query(s.id, {ComponentKind.NOSE: {"Width": "Normal"}})
        assert s.state == SessionState.SELECTING
        assert s.last_preview is None

    def test_requery_prunes_stale_selections(self, workflow):
        s = workflow.create_session()
        results = workflow.submit_query(s.id, {})
        # pick the demo seed nose (all Normal), then narrow to a query it fails
        nose_id = results[ComponentKind.NOSE][0].id
        workflow.select_component(s.id, ComponentKind.NOSE, nose_id)
        narrowed = workflow.submit_query(
            s.id, {ComponentKind.NOSE: {"Width": "Large"}})
        surviving = {r.id for r in narrowed[ComponentKind.NOSE]}
        if nose_id in surviving:
            assert s.selections.get(ComponentKind.NOSE) == nose_id
        else:
            assert ComponentKind.NOSE not in s.selections

    def test_finalized_session_rejects_query(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        workflow.generate_preview(s.id)
        workflow.finalize(s.id)
        with pytest.raises(SessionFinalized):
            workflow.submit_query(s.id, {})


class TestSelectComponent:
    def test_selection_reflected(self, workflow):
        s = workflow.create_session()
        results = workflow.submit_query(s.id, {})
        rid = results[ComponentKind.LIP][0].id
        workflow.select_component(s.id, ComponentKind.LIP, rid)
        assert s.selections[ComponentKind.LIP] == rid

    def test_latest_selection_wins(self, workflow):
        s = workflow.create_session()
        results = workflow.submit_query(s.id, {})
        first, second = (r.id for r in results[ComponentKind.LIP][:2])
        workflow.select_component(s.id, ComponentKind.LIP, first)
        workflow.select_component(s.id, ComponentKind.LIP, second)
        assert s.selections[ComponentKind.LIP] == second

    def test_unknown_record(self, workflow):
        s = workflow.create_session()
        workflow.submit_query(s.id, {})
        with pytest.raises(UnknownRecord):
            workflow.select_component(s.id, ComponentKind.LIP, 424242)

    def test_kind_mismatch_is_not_a_candidate(self, workflow):
        s = workflow.create_session()
        results = workflow.submit_query(s.id, {})
        nose_id = results[ComponentKind.NOSE][0].id
        with pytest.raises(NotACandidate):
            workflow.select_component(s.id, ComponentKind.LIP, nose_id)

    def test_outside_candidate_list(self, workflow):
        s = workflow.create_session()
        results = workflow.submit_query(
            s.id, {ComponentKind.RIGHT_EYEBROW: {"Length": "Large"}})
        listed = {r.id for r in results[ComponentKind.RIGHT_EYEBROW]}
        everything = {r.id for r in
                      workflow.catalog.match_components(ComponentKind.RIGHT_EYEBROW, {})}
        excluded = everything - listed
        if not excluded:
            pytest.skip("query did not narrow the candidate list")
        with pytest.raises(NotACandidate):
            workflow.select_component(s.id, ComponentKind.RIGHT_EYEBROW,
                                      excluded.pop())

    def test_select_before_query_rejected(self, workflow):
        s = workflow.create_session()
        some_id = workflow.catalog.match_components(ComponentKind.LIP, {})[0].id
        with pytest.raises(NotACandidate):
            workflow.select_component(s.id, ComponentKind.LIP, some_id)

    def test_reselect_during_preview_drops_it(self, workflow):
        s = workflow.create_session()
        results = select_all_lowest(workflow, s.id)
        workflow.generate_preview(s.id)
        other = results[ComponentKind.LIP][1].id
        workflow.select_component(s.id, ComponentKind.LIP, other)
        assert s.state == SessionState.SELECTING
        assert s.last_preview is None


class TestGeneratePreview:
    def test_incomplete_selection_names_kind(self, workflow):
        s = workflow.create_session()
        results = workflow.submit_query(s.id, {})
        for kind in ComponentKind:
            if kind != ComponentKind.LIP:
                workflow.select_component(s.id, kind, results[kind][0].id)
        with pytest.raises(IncompleteSelection) as err:
            workflow.generate_preview(s.id)
        assert err.value.attribute == "Lip"
        assert s.state == SessionState.SELECTING

    def test_repeated_previews_bit_identical(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        first = workflow.generate_preview(s.id)
        second = workflow.generate_preview(s.id)
        assert first.image == second.image
        assert first.layout == second.layout

    def test_blind_and_tuned_differ(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        tuned = workflow.generate_preview(s.id, PlacementMode.TUNED)
        blind = workflow.generate_preview(s.id, PlacementMode.BLIND)
        assert tuned.image != blind.image

    def test_purity_replay_on_fresh_session(self, workflow):
        first = workflow.create_session()
        select_all_lowest(workflow, first.id, DEMO_QUERY_A)
        a = workflow.generate_preview(first.id)
        second = workflow.create_session()
        select_all_lowest(workflow, second.id, DEMO_QUERY_A)
        b = workflow.generate_preview(second.id)
        assert a.image == b.image


class TestAdjustPlacement:
    def test_requires_preview(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        with pytest.raises(InvalidRequest):
            workflow.adjust_placement(s.id, LayoutOverride.of({Slot.LIP: (1, 0)}))

    def test_zero_delta_keeps_image(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        before = workflow.generate_preview(s.id)
        after = workflow.adjust_placement(s.id, LayoutOverride())
        assert after.image == before.image

    def test_deltas_accumulate(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        base = workflow.generate_preview(s.id)
        workflow.adjust_placement(s.id, LayoutOverride.of({Slot.LIP: (2, 0)}))
        after = workflow.adjust_placement(s.id, LayoutOverride.of({Slot.LIP: (1, -2)}))
        assert after.layout.lip.row == base.layout.lip.row + 3
        assert after.layout.lip.col == base.layout.lip.col - 2

    def test_lip_nudge_only_touches_lip_regions(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        before = workflow.generate_preview(s.id)
        lip_id = s.selections[ComponentKind.LIP]
        dims = workflow.catalog.component(lip_id).dims
        after = workflow.adjust_placement(s.id, LayoutOverride.of({Slot.LIP: (3, -2)}))
        old = before.layout.lip
        new = after.layout.lip
        allowed = set()
        for pos in (old, new):
            for r in range(pos.row, pos.row + dims.height):
                for c in range(pos.col, pos.col + dims.width):
                    allowed.add((r, c))
        img_a, img_b = before.image, after.image
        for r in range(img_a.rows):
            for c in range(img_a.cols):
                if img_a.at(r, c) != img_b.at(r, c):
                    assert (r, c) in allowed

    def test_failed_adjust_keeps_previous_preview(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        before = workflow.generate_preview(s.id)
        with pytest.raises(OutOfCanvas) as err:
            workflow.adjust_placement(s.id, LayoutOverride.of({Slot.LIP: (500, 0)}))
        assert err.value.slot == "lip"
        assert s.last_preview.image == before.image
        assert s.overrides.delta(Slot.LIP) == (0, 0)
        again = workflow.adjust_placement(s.id, LayoutOverride())
        assert again.image == before.image


class TestFinalize:
    def test_requires_preview_state(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        with pytest.raises(IncompleteSelection):
            workflow.finalize(s.id)

    def test_double_finalize_rejected(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id)
        workflow.generate_preview(s.id)
        workflow.finalize(s.id)
        with pytest.raises(SessionFinalized):
            workflow.finalize(s.id)

    def test_saved_face_matches_preview_bit_exactly(self, workflow, tmp_path):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id, DEMO_QUERY_A)
        preview = workflow.generate_preview(s.id)
        face_id = workflow.finalize(s.id)
        root = workflow.catalog.root
        reopened = open_catalog(root)
        assert reopened.image(face_id) == preview.image

    def test_description_backfilled_to_completeness(self, workflow):
        s = workflow.create_session()
        query = {ComponentKind.NOSE: {"Width": "Normal", "Sharpness": WILDCARD}}
        select_all_lowest(workflow, s.id, query)
        workflow.generate_preview(s.id)
        face_id = workflow.finalize(s.id)
        face = workflow.catalog.face(face_id)
        for kind in ComponentKind:
            stored = workflow.catalog.component(s.selections[kind]).attributes
            assert set(face.description[kind]) == set(stored)
        assert face.description[ComponentKind.NOSE]["Width"] == "Normal"

    def test_finalized_face_retrievable_by_original_query(self, workflow):
        s = workflow.create_session()
        select_all_lowest(workflow, s.id, DEMO_QUERY_A)
        workflow.generate_preview(s.id)
        face_id = workflow.finalize(s.id)
        hits = workflow.catalog.match_faces(DEMO_QUERY_A)
        assert face_id in [f.id for f in hits]


class TestIsolation:
    def test_sessions_do_not_interfere(self, workflow):
        a = workflow.create_session()
        b = workflow.create_session()
        select_all_lowest(workflow, a.id)
        workflow.generate_preview(a.id)
        assert b.state == SessionState.QUERYING
        assert b.selections == {}
        workflow.submit_query(b.id, {ComponentKind.NOSE: {"Width": "Normal"}})
        assert a.state == SessionState.PREVIEWING
        assert a.last_preview is not None
