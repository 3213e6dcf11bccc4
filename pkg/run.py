"""Entry point for running the pipeline from a source checkout.

Usage:
    python run.py synth --out raw.csv
    python run.py featurize --input raw.csv --out features.csv

Defaults for --seed, --threads and --log-level can be set with the
EEGAFFECT_SEED, EEGAFFECT_THREADS and EEGAFFECT_LOG_LEVEL environment variables.
"""

from eegaffect.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
