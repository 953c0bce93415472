import numpy as np
import pytest

from magicdistill.core.dense import (
    ket,
    pauli_matrix,
    projector_product,
    tableau_unitary,
)
from magicdistill.core.pauli import NonHermitianError, PauliOperator
from magicdistill.core.stabilizer import (
    Annihilated,
    CodeValidationError,
    EqualUpToPhase,
    Orthogonal,
    ProjectedState,
    StabilizerCode,
    StabilizerGroupState,
    StateRelationError,
    group_sign,
    iter_group,
    project_stabilizer_state,
    state_relation,
)
from magicdistill.distill.builtins import (
    five_qubit_code,
    parity_code,
    reed_muller_code,
    steane_code,
)
from magicdistill.sampling import random_clifford, random_code, random_pauli

from tests.tooling.asserts import assert_same_items


def labels(*text):
    return [PauliOperator.from_label(t) for t in text]


def test_iter_group_visits_every_element_once():
    generators = labels("XXI", "IZZ", "ZZI")
    elements = [p for _, p in iter_group(generators)]
    assert len(elements) == 8
    assert len({(p.x, p.z) for p in elements}) == 8
    flips = [flip for flip, _ in iter_group(generators)]
    assert flips == [None, 0, 1, 0, 2, 0, 1, 0]


def test_iter_group_empty():
    assert [p.label() for _, p in iter_group([], 2)] == ["+II"]
    with pytest.raises(ValueError, match="Qubit count is required"):
        list(iter_group([]))


def test_group_sign():
    generators = labels("XX", "-ZZ")
    assert group_sign(generators, PauliOperator.from_label("-ZZ")) == 1
    assert group_sign(generators, PauliOperator.from_label("ZZ")) == -1
    assert group_sign(generators, PauliOperator.from_label("YY")) == 1
    assert group_sign(generators, PauliOperator.from_label("XI")) is None
    assert group_sign(generators, PauliOperator.identity(2)) == 1


def test_basis_state():
    state = StabilizerGroupState.basis((1, 0))
    assert state.labels() == ["-ZI", "+IZ"]


def test_group_state_validation():
    with pytest.raises(ValueError, match="needs 2 generators"):
        StabilizerGroupState.from_labels("ZZ")
    with pytest.raises(ValueError, match="dependent"):
        StabilizerGroupState.from_labels("ZZ", "-ZZ")
    with pytest.raises(ValueError, match="anticommute"):
        StabilizerGroupState.from_labels("XI", "ZI")
    with pytest.raises(NonHermitianError):
        StabilizerGroupState.from_labels("iZI", "IZ")


def _state_vector(state):
    projector = projector_product(state.generators, state.n)
    column = int(np.argmax(np.linalg.norm(projector, axis=0)))
    vector = projector[:, column]
    return vector / np.linalg.norm(vector)


def test_projection_matches_dense(rng):
    for _ in range(100):
        n = int(rng.integers(1, 4))
        c = random_clifford(rng, n)
        state = StabilizerGroupState.basis((0,) * n).conjugated(c)
        projectors = [random_pauli(rng, n) for _ in range(int(rng.integers(1, 3)))]
        # keep a commuting subset
        projectors = [
            p
            for i, p in enumerate(projectors)
            if all((p * q).is_hermitian for q in projectors[:i])
        ]
        vector = _state_vector(state)
        projected = projector_product(projectors, n) @ vector
        result = project_stabilizer_state(state, projectors)
        if isinstance(result, Annihilated):
            assert np.allclose(projected, 0)
            continue
        assert isinstance(result, ProjectedState)
        assert np.isclose(np.linalg.norm(projected), 2 ** float(result.amp_log2))
        expected = _state_vector(result.state)
        assert np.isclose(abs(np.vdot(expected, projected)), np.linalg.norm(projected))


def test_state_relation():
    plus = StabilizerGroupState.from_labels("X")
    minus = StabilizerGroupState.from_labels("-X")
    assert state_relation(plus, minus) == Orthogonal(PauliOperator.from_label("X"))
    assert state_relation(plus, plus) == EqualUpToPhase(0)
    witness = PauliOperator.from_label("-iX")
    assert state_relation(plus, plus, witness) == EqualUpToPhase(3)
    with pytest.raises(StateRelationError):
        state_relation(plus, StabilizerGroupState.from_labels("Z"))


BUILTIN_CODES = [steane_code, five_qubit_code, parity_code, reed_muller_code]


@pytest.mark.parametrize("make_code", BUILTIN_CODES)
def test_builtin_codes_are_valid(make_code):
    code = make_code()
    assert len(code.generators) == code.n - 1
    assert code.sign_of(code.logical_x) is None
    assert code.logical_y.is_hermitian


def test_code_validation_errors():
    with pytest.raises(CodeValidationError, match="anticommute") as info:
        StabilizerCode.from_labels(["ZZ"], "XI", "ZI")
    assert [p.label() for p in info.value.pair] == ["+ZZ", "+XI"]
    with pytest.raises(CodeValidationError, match="commute"):
        StabilizerCode.from_labels(["ZZ"], "XX", "ZZ")
    with pytest.raises(CodeValidationError, match="dependent"):
        StabilizerCode.from_labels(["ZZI", "ZZI"], "XXX", "ZII")
    with pytest.raises(ValueError, match="needs 2 generators"):
        StabilizerCode.from_labels(["ZZI"], "XXX", "ZII")
    with pytest.raises(NonHermitianError):
        StabilizerCode.from_labels(["iZZ"], "XX", "ZI")


@pytest.mark.parametrize("make_code", [steane_code, five_qubit_code, parity_code])
def test_decoder_maps_logicals_and_codespace(make_code):
    code = make_code()
    n = code.n
    decode = code.decoder()
    assert decode(code.logical_x) == PauliOperator.single(n, 0, "X")
    assert decode(code.logical_z) == PauliOperator.single(n, 0, "Z")
    unitary = tableau_unitary(decode)
    projector = projector_product(code.generators, n)
    # decoded codewords leave the other qubits in |0...0>
    rest = np.kron(np.eye(2), np.outer(ket((0,) * (n - 1)), ket((0,) * (n - 1))))
    assert np.allclose(rest @ unitary @ projector, unitary @ projector)
    for logical, single in [(code.logical_x, "X"), (code.logical_z, "Z")]:
        assert np.allclose(
            unitary @ pauli_matrix(logical) @ projector,
            pauli_matrix(PauliOperator.single(n, 0, single)) @ unitary @ projector,
        )


def test_decoder_with_syndrome():
    code = steane_code()
    syndrome = (1, 0, 1, 0, 0, 1)
    decode = code.decoder(syndrome)
    for g, bit in zip(code.generators, syndrome):
        image = decode(g)
        assert image.label().startswith("-" if bit else "+")
    with pytest.raises(ValueError, match="must have 6 entries"):
        code.decoder((0, 1))


def test_random_codes_are_valid(rng):
    for n in range(1, 6):
        code = random_code(rng, n)
        assert code.n == n
        decode = code.decoder()
        assert decode(code.logical_z) == PauliOperator.single(n, 0, "Z")


def test_code_group_and_labels():
    code = parity_code()
    assert_same_items([p.label() for p in code.group()], ["+II", "+ZZ"])
    assert code.labels() == {
        "generators": ["+ZZ"],
        "logical_x": "+XX",
        "logical_z": "+ZI",
    }
    assert code.logical_state(-1).labels() == ["-XX", "+ZZ"]
