"""EEG band-power affective-state recognition pipeline."""
