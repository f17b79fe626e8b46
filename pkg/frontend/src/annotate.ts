import { FetchLike } from './contract.js';

function inlineMessage(form: HTMLFormElement, text: string): void {
  let note = form.querySelector<HTMLElement>('.form-error');
  if (!note) {
    note = form.ownerDocument.createElement('p');
    note.className = 'form-error';
    form.appendChild(note);
  }
  note.textContent = text;
}

function clearMessage(form: HTMLFormElement): void {
  form.querySelector('.form-error')?.remove();
}

function appendRow(doc: Document, predicate: string, object: string): void {
  const list = doc.getElementById('triples');
  if (!list) {
    return;
  }
  const li = doc.createElement('li');
  const pred = doc.createElement('span');
  pred.className = 'predicate';
  pred.textContent = predicate;
  const obj = doc.createElement('span');
  obj.className = 'object';
  obj.textContent = object;
  li.appendChild(pred);
  li.appendChild(doc.createTextNode(' '));
  li.appendChild(obj);
  list.appendChild(li);
}

function formBody(form: HTMLFormElement): URLSearchParams {
  const body = new URLSearchParams();
  for (const field of Array.from(form.elements)) {
    const input = field as HTMLInputElement | HTMLSelectElement;
    if (input.name) {
      body.set(input.name, input.value);
    }
  }
  return body;
}

export function enhanceAnnotationForm(doc: Document, fetchFn: FetchLike = fetch): void {
  const form = doc.getElementById('annotation-form') as HTMLFormElement | null;
  if (!form || !doc.getElementById('triples')) {
    return;
  }
  // one request in flight per form; later submits queue behind it so
  // rows land in submit order
  let pending: Promise<void> = Promise.resolve();
  form.addEventListener('submit', (event: Event) => {
    event.preventDefault();
    const body = formBody(form);
    const predicate = (body.get('predicate') ?? '').trim();
    const object = (body.get('object') ?? '').trim();
    if (!predicate || !object) {
      inlineMessage(form, 'predicate and object are required');
      return;
    }
    clearMessage(form);
    pending = pending.then(async () => {
      try {
        const resp = await fetchFn(form.getAttribute('action') ?? '/annotations', {
          method: 'POST',
          headers: { 'Content-Type': 'application/x-www-form-urlencoded' },
          body: body.toString(),
        });
        if (resp.ok || resp.status === 303) {
          appendRow(doc, predicate, object);
        } else {
          inlineMessage(form, `rejected: ${(await resp.text()).trim() || resp.status}`);
        }
      } catch {
        inlineMessage(form, 'network failure, annotation not saved; retry');
      }
    });
  });
}
