"""Global limits. Override per call or by assigning to the module attributes."""
import os

ORDER_BOUND = int(os.environ.get("FITSET_ORDER_BOUND", 200))
SUBGROUP_CAP = int(os.environ.get("FITSET_SUBGROUP_CAP", 20000))
