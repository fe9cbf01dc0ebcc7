from .report import VerificationReport
from .suite import Verification, VerificationError
from .injectivity import InjectivityVerification
from .counterexample import CounterexampleVerification
from .properties import PropertyVerification
