/* Color rating screen: one swatch and 0-10 slider per basic color.
 * A slider only counts once the participant has actually moved or tapped
 * it, so the submit button stays locked until all twelve are set. */

import { ColorInfo } from "./api.js";

export class RatingForm {
  private values = new Map<string, number>();

  constructor(readonly colors: ColorInfo[]) {}

  set(name: string, value: number): void {
    if (!this.colors.some((c) => c.name === name)) {
      throw new Error(`unknown color: ${name}`);
    }
    if (!Number.isInteger(value) || value < 0 || value > 10) {
      throw new Error(`rating must be an integer 0-10, got ${value}`);
    }
    this.values.set(name, value);
  }

  get setCount(): number {
    return this.values.size;
  }

  get complete(): boolean {
    return this.values.size === this.colors.length;
  }

  payload(): Record<string, number> {
    if (!this.complete) throw new Error("rating form is incomplete");
    const out: Record<string, number> = {};
    for (const c of this.colors) out[c.name] = this.values.get(c.name)!;
    return out;
  }
}

export function renderRatingScreen(
  root: HTMLElement,
  colors: ColorInfo[],
  onSubmit: (ratings: Record<string, number>) => void,
): RatingForm {
  const form = new RatingForm(colors);
  root.innerHTML = "";

  const heading = document.createElement("h2");
  heading.textContent = "How much do you like each color?";
  root.appendChild(heading);

  const hint = document.createElement("p");
  hint.className = "hint";
  hint.textContent = "0 = dislike, 10 = love. Set every slider to continue.";
  root.appendChild(hint);

  const list = document.createElement("div");
  list.className = "rating-list";
  root.appendChild(list);

  const submit = document.createElement("button");
  submit.textContent = "Submit ratings";
  submit.disabled = true;

  for (const color of colors) {
    const row = document.createElement("div");
    row.className = "rating-row";

    const swatch = document.createElement("span");
    swatch.className = "swatch";
    const [r, g, b] = color.rgb;
    swatch.style.backgroundColor = `rgb(${r}, ${g}, ${b})`;
    swatch.title = color.name;

    const label = document.createElement("span");
    label.className = "color-name";
    label.textContent = color.name;

    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "10";
    slider.step = "1";
    slider.value = "5";
    slider.dataset.color = color.name;

    const readout = document.createElement("span");
    readout.className = "readout";
    readout.textContent = "–";

    slider.addEventListener("input", () => {
      const value = Number(slider.value);
      form.set(color.name, value);
      readout.textContent = String(value);
      submit.disabled = !form.complete;
    });

    row.append(swatch, label, slider, readout);
    list.appendChild(row);
  }

  submit.addEventListener("click", () => {
    if (!form.complete) return;
    submit.disabled = true;
    onSubmit(form.payload());
  });
  root.appendChild(submit);

  return form;
}
