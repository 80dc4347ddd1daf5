import json

import pytest

from rulefuse.ranking import (
    FeatureOrdering,
    column_ordering,
    load_global_ordering,
    load_local_orderings,
    save_global_ordering,
    save_local_orderings,
    validate_ordering,
)

LEUKEMIA_ORDERING = (
    "cd9", "cd123", "cd45", "cd20", "td_t", "cd10", "cd22", "cd66", "cd24",
    "cd13", "cd38", "c_ig_m", "cd81", "cd34", "ng2", "cd33", "cd15_65",
)


class TestGlobalOrdering:
    def test_load_simple(self, tmp_path):
        path = tmp_path / "fo.txt"
        path.write_text("b\na\n")
        assert load_global_ordering(str(path)).features == ("b", "a")

    def test_duplicate_rejected(self, tmp_path):
        path = tmp_path / "fo.txt"
        path.write_text("b\na\nb\n")
        with pytest.raises(ValueError, match="duplicate"):
            load_global_ordering(str(path))

    def test_empty_rejected(self, tmp_path):
        path = tmp_path / "fo.txt"
        path.write_text("\n\n")
        with pytest.raises(ValueError, match="empty"):
            load_global_ordering(str(path))

    def test_seventeen_feature_ranking(self, tmp_path):
        path = tmp_path / "fo.txt"
        path.write_text("\n".join(LEUKEMIA_ORDERING) + "\n")
        fo = load_global_ordering(str(path))
        assert len(fo.features) == 17
        assert fo.features[0] == "cd9"

    def test_roundtrip(self, tmp_path):
        fo = FeatureOrdering(("b", "a", "c"))
        path = tmp_path / "fo.txt"
        save_global_ordering(fo, str(path))
        assert load_global_ordering(str(path)).features == fo.features


class TestLocalOrderings:
    def test_load_two_lines(self, tmp_path):
        path = tmp_path / "fo.jsonl"
        path.write_text(
            json.dumps({"row_id": "0", "features": ["a", "b"]}) + "\n" +
            json.dumps({"row_id": "1", "features": ["b", "a"]}) + "\n")
        fos = load_local_orderings(str(path))
        assert set(fos) == {"0", "1"}
        assert fos["1"].features == ("b", "a")
        assert fos["1"].scope == "local"
        assert fos["1"].instance_key == "1"

    def test_repeated_feature_rejected(self, tmp_path):
        path = tmp_path / "fo.jsonl"
        path.write_text(json.dumps({"row_id": "0", "features": ["a", "a"]}) + "\n")
        with pytest.raises(ValueError, match="duplicate feature"):
            load_local_orderings(str(path))

    def test_empty_features_rejected(self, tmp_path):
        path = tmp_path / "fo.jsonl"
        path.write_text(json.dumps({"row_id": "0", "features": []}) + "\n")
        with pytest.raises(ValueError, match="empty features"):
            load_local_orderings(str(path))

    def test_missing_row_id_rejected(self, tmp_path):
        path = tmp_path / "fo.jsonl"
        path.write_text(json.dumps({"features": ["a"]}) + "\n")
        with pytest.raises(ValueError, match="missing row_id"):
            load_local_orderings(str(path))

    def test_duplicate_row_id_rejected(self, tmp_path):
        path = tmp_path / "fo.jsonl"
        line = json.dumps({"row_id": "0", "features": ["a"]})
        path.write_text(line + "\n" + line + "\n")
        with pytest.raises(ValueError, match="duplicate row_id"):
            load_local_orderings(str(path))

    def test_roundtrip(self, tmp_path):
        fos = {"0": FeatureOrdering(("a", "b"), scope="local", instance_key="0"),
               "x9": FeatureOrdering(("b",), scope="local", instance_key="x9")}
        path = tmp_path / "fo.jsonl"
        save_local_orderings(fos, str(path))
        again = load_local_orderings(str(path))
        assert {k: v.features for k, v in again.items()} == \
            {k: v.features for k, v in fos.items()}


class TestValidation:
    def test_known_features_pass(self, t1):
        fo = FeatureOrdering(("b", "a"))
        assert validate_ordering(fo, t1) is fo

    def test_unknown_feature_named_in_error(self, t1):
        with pytest.raises(ValueError, match="z"):
            validate_ordering(FeatureOrdering(("z",)), t1)

    def test_subset_ordering_allowed(self, t1):
        fo = FeatureOrdering(("b",))
        assert validate_ordering(fo, t1).features == ("b",)

    def test_column_ordering(self, t1):
        assert column_ordering(t1).features == ("a", "b")


class TestInvariants:
    def test_nonempty_required(self):
        with pytest.raises(ValueError):
            FeatureOrdering(())

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            FeatureOrdering(("a", "a"))
