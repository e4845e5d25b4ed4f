# Stress tests package