"""Prime graphs of character degree sets: construction, structural
screening with certificates, PSL2(q) graphs, and corpus verification."""

from .duke import (
    DIAM3_COMPLEMENT_NOT_BIPARTITE,
    DIAM3_LEMMA31_FAILS,
    DIAM3_NOT_DUKE,
    DIAMETER_EXCEEDS_3,
    BadPattern,
    DukePartition,
    FeasibilityReport,
    NotAPartition,
    NotDistance3,
    TooSmall,
    Violation,
    find_duke,
    lemma31_holds,
    screen,
    synthesize_duke,
    verify_duke,
    witness_partition,
)
from .graphs import (
    UNREACHABLE,
    BipartiteCertificate,
    DegreeSet,
    PrimeGraph,
    bipartition_or_odd_cycle,
    build_graph,
)
from .corpus import (
    GroupRecord,
    InvalidRecord,
    MalformedRecord,
    RecordWarning,
    VerdictReport,
    parse_record,
    serialize_record,
    verify_corpus,
    verify_lines,
)
from .primes import Factorization, factorize, first_primes, is_prime, prime_power, prime_set
from .psl2 import PrimePowerQ, crosscheck, lemma24_graph, psl2_degrees

__version__ = "0.1.0"
