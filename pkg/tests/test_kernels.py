"""The jitted scan and the vectorized numpy fallback must be interchangeable."""

import os
import subprocess
import sys

import pytest

from qmvote import _kernels
from qmvote.verifier import survivors_anonymous, survivors_full


@pytest.mark.skipif(
    os.environ.get(_kernels.ENV_FLAG, "") != "",
    reason="numpy fallback forced via environment",
)
def test_numba_is_the_default_here():
    assert _kernels.HAVE_NUMBA
    assert _kernels.USE_NUMBA


@pytest.mark.parametrize("q", [0, 1, 2])
def test_paths_agree_on_the_full_n2_space(q):
    assert survivors_full(2, q, use_numba=True) == survivors_full(2, q, use_numba=False)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_paths_agree_on_anonymous_spaces(n):
    for q in range(n + 1):
        assert survivors_anonymous(n, q, use_numba=True) == survivors_anonymous(
            n, q, use_numba=False
        )


def test_paths_agree_with_axioms_dropped():
    for kwargs in (
        {"use_responsiveness": False},
        {"use_neutrality": False},
        {"use_anonymity": False},
    ):
        assert survivors_full(2, 2, use_numba=True, **kwargs) == survivors_full(
            2, 2, use_numba=False, **kwargs
        )


def test_survivor_buffer_growth_with_every_check_off():
    # with no checks enabled every encoding survives, which pushes the
    # jitted kernel through several result-buffer doublings
    everything = {"use_anonymity": False, "use_responsiveness": False, "use_neutrality": False}
    jit = survivors_full(2, 0, use_numba=True, **everything)
    plain = survivors_full(2, 0, use_numba=False, **everything)
    assert jit == plain == list(range(512))


def test_env_flag_selects_the_numpy_path():
    env = dict(os.environ, QMVOTE_NO_NUMBA="1")
    out = subprocess.run(
        [
            sys.executable,
            "-c",
            "from qmvote import _kernels; print(_kernels.USE_NUMBA, _kernels.HAVE_NUMBA)",
        ],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.split() == ["False", "True"]


def test_env_flag_still_yields_identical_results():
    env = dict(os.environ, QMVOTE_NO_NUMBA="1")
    code = (
        "from qmvote.verifier import survivors_anonymous;"
        "print(survivors_anonymous(4, 3))"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == str(survivors_anonymous(4, 3))
