import pytest

from harness.named_codes import hamming, named_code, repetition, trivial
from representation.compact_representation import compact
from representation.groebner_representation import build_representation

# every code here has n <= 12 so that all 2**n words can be scanned
DESK_CODES = [
    "hamming:3",
    "repetition:3",
    "repetition:4",
    "repetition:5",
    "repetition:6",
    "repetition:7",
    "trivial:4",
    "random:8,4,1",
    "random:9,3,2",
    "random:10,5,1",
    "random:11,6,3",
    "random:12,6,4",
]


def _sweep_source(seed: int) -> str:
    n = 8 + seed % 5
    k = 2 + (seed // 5) % (n - 3)
    return f"random:{n},{k},{seed}"


# seeded random codes with 8 <= n <= 12 and 2 <= k <= n - 2
SWEEP_CODES = [_sweep_source(seed) for seed in range(50)]


@pytest.fixture(params=DESK_CODES)
def desk_code(request):
    return named_code(request.param)


@pytest.fixture(params=SWEEP_CODES[:25])
def sweep_code(request):
    return named_code(request.param)


@pytest.fixture(params=SWEEP_CODES)
def wide_sweep_code(request):
    return named_code(request.param)


@pytest.fixture
def hamming_code():
    return hamming(3)


@pytest.fixture
def repetition_code():
    return repetition(3)


@pytest.fixture
def trivial_code():
    return trivial(4)


@pytest.fixture
def hamming_rep(hamming_code):
    return build_representation(hamming_code)


@pytest.fixture
def hamming_compact(hamming_rep):
    return compact(hamming_rep)


@pytest.fixture
def repetition_rep(repetition_code):
    return build_representation(repetition_code)
