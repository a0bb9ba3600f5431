# Hooks package for pytest configuration
