import os

from hypothesis import settings

settings.register_profile("qvac", max_examples=25, deadline=None, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "qvac"))
