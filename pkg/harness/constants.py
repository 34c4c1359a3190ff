MAX_WORD_LENGTH: int = 64  # BitWords are packed into one machine word
MAX_REDUNDANCY: int = 28  # refuse tables with more than 2**28 cosets unless forced
BRUTEFORCE_MAX_DIMENSION: int = 20  # codeword enumeration (2**k) cap for oracles
EXHAUSTIVE_MAX_LENGTH: int = 16  # cap on scans over all 2**n received words
# the literal border scan is quadratic in the number of cosets
BORDER_DEFINITION_MAX_REDUNDANCY: int = 12
SAMPLED_CHUNK_SIZE: int = 4096  # trials per RNG stream in sampled experiments
RNG_ALGORITHM: str = "numpy Philox4x32-10, SeedSequence.spawn per chunk"
FORMAT_MAGIC: bytes = b"GREP"  # representation file signature
FORMAT_VERSION: int = 1  # representation file layout version
LOG_FILE_NAME: str = "groebner_gdd.log"
RANDOM_CODE_MAX_RESAMPLES: int = 1000  # rank-deficient random generators are redrawn
MAX_LISTED_MISMATCHES: int = 20  # mismatching inputs kept per decoder in a report

assert (
    BORDER_DEFINITION_MAX_REDUNDANCY <= MAX_REDUNDANCY
), f"{BORDER_DEFINITION_MAX_REDUNDANCY=} cannot be greater than {MAX_REDUNDANCY=}."
assert (
    EXHAUSTIVE_MAX_LENGTH <= MAX_WORD_LENGTH
), f"{EXHAUSTIVE_MAX_LENGTH=} cannot be greater than {MAX_WORD_LENGTH=}."