import pytest

from src.models.Formula_Model import Atom, Impl
from src.models.Kripke_Model import FrameLaw
from src.models.Proof_Model import Ax, Mp
from src.services.proof_service import id_proof
from src.services.semantics_service import build_lem_countermodel, enumerate_models, validate_frame
from src.utils.errors import InputFileError, ModelFileError, ProofFileError
from src.utils.model_file_util import format_model, load_model, model_to_dot, parse_model_text
from src.utils.proof_file_util import format_derivation, load_proof, parse_proof

p0 = Atom(0)

IDENTITY_TEXT = '(mp (mp (s "p0" "p0 -> p0" "p0") (k "p0" "p0 -> p0")) (k "p0" "p0"))'
LEM_MODEL_TEXT = "worlds: 0 1\nrel: 0->0 0->1 1->1\nval: p0@1\n"


class TestProofFiles:

    def test_parse_identity(self):
        assert parse_proof(IDENTITY_TEXT) == id_proof(p0)

    def test_format_identity(self):
        assert format_derivation(id_proof(p0)) == IDENTITY_TEXT

    def test_format_then_parse(self):
        d = Mp(id_proof(Impl(p0, Atom(1))), Ax(Impl(p0, Atom(1))))
        assert parse_proof(format_derivation(d)) == d

    def test_load_proof(self, write_file):
        path = write_file("id.proof", IDENTITY_TEXT + "\n")
        assert load_proof(path) == id_proof(p0)

    def test_proof_file_that_is_not_utf8(self, tmp_path):
        path = tmp_path / "latin1.proof"
        path.write_bytes(b'(ax "p0")\xff')
        with pytest.raises(InputFileError, match="UTF-8"):
            load_proof(path)

    def test_missing_proof_file(self, tmp_path):
        with pytest.raises(InputFileError):
            load_proof(tmp_path / "absent.proof")

    @pytest.mark.parametrize("text", [
        '(mp (k "p0" "p1")',
        '(frob "p0")',
        '(k "p0")',
        '(mp (ax "p0"))',
        '(ax "p0 ->")',
        '(k (ax "p0") "p1")',
        '(ax "p\\q0")',
    ])
    def test_malformed_proofs(self, text):
        with pytest.raises(ProofFileError):
            parse_proof(text)


class TestModelFiles:

    def test_parse_lem_model(self):
        model, root = parse_model_text(LEM_MODEL_TEXT)
        assert model == build_lem_countermodel()[0]
        assert root is None

    def test_root_line_and_comments(self):
        model, root = parse_model_text("# lem\n" + LEM_MODEL_TEXT + "\nroot: 0\n")
        assert root == 0
        assert model.worlds == (0, 1)

    def test_format_is_sorted(self):
        model, root = build_lem_countermodel()
        assert format_model(model, root) == "worlds: 0 1\nrel: 0->0 0->1 1->1\nval: p0@1\nroot: 0\n"

    def test_empty_valuation_line(self):
        model = next(iter(enumerate_models(1, [])))
        assert format_model(model) == "worlds: 0\nrel: 0->0\nval:\n"
        assert parse_model_text(format_model(model))[0] == model

    def test_formatted_models_reparse(self):
        for model in enumerate_models(2, [0]):
            assert parse_model_text(format_model(model))[0] == model

    def test_reflexivity_violation_is_reported(self):
        with pytest.raises(ModelFileError) as error:
            parse_model_text("worlds: 0 1\nrel: 0->0 0->1\nval:\n")
        assert error.value.verdict.kind is FrameLaw.REFL
        assert error.value.verdict.witness == (1,)

    def test_monotonicity_violation_is_reported(self):
        with pytest.raises(ModelFileError) as error:
            parse_model_text("worlds: 0 1\nrel: 0->0 0->1 1->1\nval: p0@0\n")
        assert error.value.verdict.kind is FrameLaw.MONO

    @pytest.mark.parametrize("text", [
        "rel: 0->0\n",
        "worlds: 0\nrel: 0-0\n",
        "worlds: 0\nval: q0@0\n",
        "worlds: 0\nrel: 0->1\n",
        "worlds: x\n",
        "worlds: 0\nworlds: 1\n",
        "worlds: 0\nrel: 0->0\nroot: 3\n",
        "world: 0\n",
    ])
    def test_malformed_models(self, text):
        with pytest.raises(ModelFileError):
            parse_model_text(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFileError):
            load_model(tmp_path / "absent.model")

    def test_file_that_is_not_utf8(self, tmp_path):
        path = tmp_path / "latin1.model"
        path.write_bytes(b"worlds: 0\nrel: 0->0\n# \xff\n")
        with pytest.raises(ModelFileError, match="UTF-8"):
            load_model(path)

    def test_dot_output(self):
        model, root = build_lem_countermodel()
        dot = model_to_dot(model, root)
        assert dot.startswith("digraph kripke {")
        assert "w0 -> w1;" in dot
        assert "w0 -> w0;" not in dot
        assert 'w1 [label="1\\np0", shape=circle];' in dot
        assert "shape=doublecircle" in dot

    def test_loaded_models_pass_frame_validation(self, write_file):
        path = write_file("lem.model", LEM_MODEL_TEXT)
        model, _ = load_model(path)
        assert validate_frame(model).ok
