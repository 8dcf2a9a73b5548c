"""Find the emphasis weight that changes the plan, then vary the distance threshold.

Run with ``python3 demos/emphasis_and_thresholds.py``.
"""
import numpy as np

from parkequity import AccessConfig, ParkInstance, ParkSite, ResidentLocation, calibrate_emphasis
from parkequity import threshold_sensitivity

# The budget buys one of two parks: one near group A's homes, one near group B's.
parks = (
    ParkSite("home", True, 0.0, 1000.0),
    ParkSite("west", False, 50.0, 1000.0),
    ParkSite("east", False, 50.0, 1000.0),
)
locations = (ResidentLocation("la", {"A": 100.0, "B": 0.0}), ResidentLocation("lb", {"A": 0.0, "B": 90.0}))
distance = np.array([[1.5, 1.5], [0.2, 1.5], [1.5, 0.2]])
inst = ParkInstance(parks, locations, ("A", "B"), distance, budget=50.0, max_distance=0.5)
cfg = AccessConfig()

result = calibrate_emphasis(inst, cfg, "B")
print("baseline opens", result.baseline.opened)
for weight, opened in zip(result.grid, result.opened_sets):
    print(f"  q_B={weight:4.0f}: {opened}")
print("smallest weight that changes the plan:", result.threshold)

for point in threshold_sensitivity(inst, cfg, [0.25, 0.5, 1.0, 2.0]):
    print(f"m={point.max_distance:4.2f} objective={point.solution.objective:8.2f} "
          f"opened={point.solution.opened} overlap={point.overlap_with_previous}")
