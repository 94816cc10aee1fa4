"""
Verification tasks (config-driven).

Each task module exposes TASK, RANDOMIZED, Params, EXAMPLE_PARAMS and run(ctx, params); the registry
collects them and the runner executes them from config/runs/*.yaml.
"""
