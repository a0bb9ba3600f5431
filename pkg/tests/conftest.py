#!/usr/bin/env python3
"""
Pytest configuration with modular fixture organization
Fixtures live in tests/fixtures, parallel-execution hooks in tests/hooks
"""

# Explicitly register pytest-asyncio so async tests have an event loop
# available even when pytest's auto-discovery misses the plugin.
pytest_plugins = ("pytest_asyncio",)

# Import all fixtures from organized modules (system fixtures first: they put src on sys.path)
from .fixtures.system_fixtures import *
from .fixtures.temp_fixtures import *
from .fixtures.sample_fixtures import *

# Import pytest hooks for parallel execution
from .hooks.parallel_hooks import *
