"""
Reproduction scenarios for the jump and error-law experiments
"""

LEFT_PIECE = "3.3 + x^2/2 + sin(3*x)"
RIGHT_PIECE = "3.5 - x"


def _jump_scenario(c: str, label: str) -> str:
    return f"""# Oscillating potential with one jump at c = {c}
piece [0, {c}]: {LEFT_PIECE}
piece [{c}, 1]: {RIGHT_PIECE}
jump at {c} side right

n = 10..200
checks = ratio, predict
output = out/jump_{label}.csv
"""


SAMPLE_SCENARIOS = {
    "jump_half.scn": _jump_scenario("1/2", "half"),
    "jump_third.scn": _jump_scenario("1/3", "third"),
    "jump_inv_pi.scn": _jump_scenario("1/pi", "inv_pi"),
    "error_law.scn": """# Rough potential with an irrational jump; errors should decay like 1/n
domain [0, 1]
piece [0, 0.9 - 1/pi]: 3.3 + x^2/2 + sqrt(x)*sin(13*x)
piece [0.9 - 1/pi, 1]: 3.5 - cos(20*x)
jump at 0.9 - 1/pi side left

n = 10..3000 step 23
checks = ratio, fit
output = out/error_law.csv
""",
    "kac_linear.scn": """# Smooth linear potential: Kac limit, shift behaviour and trace checks
piece [0, 1]: x + 3

n = 100..2000 step 100
eps_compare = 5
checks = ratio, predict, kms, eigs-invariance, em, ms
output = out/kac_linear.csv
""",
}


def create_scenarios(output_dir: str = "./data/scenarios"):
    """Create scenario files in the specified directory"""
    import os
    os.makedirs(output_dir, exist_ok=True)

    for filename, content in SAMPLE_SCENARIOS.items():
        filepath = os.path.join(output_dir, filename)
        with open(filepath, 'w') as f:
            f.write(content)
        print(f"Created: {filepath}")

    return list(SAMPLE_SCENARIOS.keys())


if __name__ == "__main__":
    files = create_scenarios()
    print(f"\nCreated {len(files)} scenarios")
