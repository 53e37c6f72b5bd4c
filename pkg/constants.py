import os
from dotenv import load_dotenv

load_dotenv()


LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
QR_MAX_SWEEPS = int(os.getenv("QR_MAX_SWEEPS") or 10000)
QR_TOLERANCE = float(os.getenv("QR_TOLERANCE") or 1e-12)
POWER_ITERATION_TOLERANCE = float(os.getenv("POWER_ITERATION_TOLERANCE") or 1e-12)
POWER_ITERATION_MAX_STEPS = int(os.getenv("POWER_ITERATION_MAX_STEPS") or 100000)
STRIP_TILES = int(os.getenv("STRIP_TILES") or 20)
REPORT_COMPLEXITY_MAX = int(os.getenv("REPORT_COMPLEXITY_MAX") or 10)
PROPERTY_SAMPLES = int(os.getenv("PROPERTY_SAMPLES") or 200)
PROPERTY_SEED = int(os.getenv("PROPERTY_SEED") or 2016)

MAX_ALPHABET_SIZE = 26
DECIMAL_PLACES = 2
PALETTE = ["red", "blue", "green", "magenta", "brown", "cyan"]
FALLBACK_COLOUR = "gray"
SAVE_FILE_ENCODING = "utf-8"

# Named substitutions accepted anywhere an encoded substitution is.
EXAMPLES = {
    "fibonacci": "b.ba",
    "thue-morse": "ab.ba",
    "tribonacci": "ab.ac.a",
    "disconnected": "abcda.ab.cdbc.db",
    "hexibonacci": "ab.ac.ad.ae.af.a",
    "period-doubling": "ab.aa",
    "periodic": "ab.ab",
}
