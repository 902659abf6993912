"""
Shared types: chart and structure dataclasses, pydantic report models and the CpcError hierarchy.
"""
