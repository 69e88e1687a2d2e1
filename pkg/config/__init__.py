"""Settings and named scheme presets"""
