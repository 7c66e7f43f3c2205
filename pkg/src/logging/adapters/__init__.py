"""Adapters that populate logging context from run inputs."""
