import { HighlightRect, overlayRect } from './contract.js';

// Overlay geometry is stored in natural image pixels; the image may be
// displayed narrower, so everything scales by one factor.
export function scaleRect(rect: HighlightRect, factor: number): HighlightRect {
  return {
    x: rect.x * factor,
    y: rect.y * factor,
    w: rect.w * factor,
    h: rect.h * factor,
  };
}

export function displayFactor(img: HTMLImageElement): number {
  const natural = img.width;
  if (!natural) {
    return 1;
  }
  const displayed = img.clientWidth || natural;
  return displayed / natural;
}

function positionOverlay(overlay: HTMLElement, rect: HighlightRect): void {
  overlay.style.position = 'absolute';
  overlay.style.left = `${rect.x}px`;
  overlay.style.top = `${rect.y}px`;
  overlay.style.width = `${rect.w}px`;
  overlay.style.height = `${rect.h}px`;
}

export function renderHighlights(doc: Document): void {
  for (const stage of Array.from(doc.querySelectorAll<HTMLElement>('.image-stage'))) {
    const img = stage.querySelector('img');
    const overlay = stage.querySelector<HTMLElement>('.highlight');
    if (!img || !overlay) {
      continue;
    }
    const rect = overlayRect(overlay);
    if (!rect) {
      continue;
    }
    stage.style.position = 'relative';
    positionOverlay(overlay, scaleRect(rect, displayFactor(img)));
  }
  const first = Array.from(doc.querySelectorAll<HTMLElement>('.highlight')).find(
    (el) => !el.closest('.image-stage'),
  );
  if (first) {
    first.style.outline = '2px solid red';
    if (typeof first.scrollIntoView === 'function') {
      first.scrollIntoView({ block: 'center' });
    }
  }
}
