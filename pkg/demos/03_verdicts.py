"""Classify every built-in system."""
from liereach import Caps, classify
from liereach.presets import PRESET_NAMES
from liereach.systems import build_preset

for name in PRESET_NAMES:
    system, rep = build_preset(name)
    v = classify(system, Caps(), rep)
    ev = v.evidence
    print(f"{name:12} {v.classification:34} A={ev.get('dim_A')} B={ev.get('dim_B')} "
          f"C={ev.get('dim_C')}")
    if ev.get("failed"):
        print(f"{'':12} failed: {', '.join(ev['failed'])}")
